"""Restricted root space decompositions of classical real semisimple Lie algebras."""

from .catalog import AlgebraSpec, build, list_catalog, parse_spec
from .liealg import CartanData, LieAlgebra
from .numkit import Frame
from .report import CheckResult, VerificationReport
from .rootspace import RootDatum, decompose

__all__ = [
    "AlgebraSpec",
    "CartanData",
    "CheckResult",
    "Frame",
    "LieAlgebra",
    "RootDatum",
    "VerificationReport",
    "build",
    "decompose",
    "list_catalog",
    "parse_spec",
]

__version__ = "0.1.0"
