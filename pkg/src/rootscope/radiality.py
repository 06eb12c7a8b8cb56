"""Radiality of K-invariant functions restricted to root spaces.

Points of ``G/K`` are modelled by ``p = g Theta(g)^{-1}``. With the
involution ``Theta(g) = (g^T)^{-1}`` used by the catalog this is
``p = g g^T``, which is unchanged under ``g -> g k`` for ``k`` in K. Test
functions are spectral invariants of ``p`` and hence also invariant under
``g -> k g``, which in particular kills the fundamental vector fields of
``m``.

For such a function ``F`` and a root ``lam``, ``f_lam(X) = F(exp X)`` on
``g_lam`` should only depend on ``beta_sigma(X, X)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numkit
from .errors import MembershipFailure, MultiplicityTooSmall
from .liealg import CartanData, LieAlgebra
from .report import VerificationReport, trial_rng
from .rootspace import DEFAULT_TOL, RootDatum
from .theorem import _require_member

KINDS = ("trace_p", "trace_p2", "trace_p_inv")
PROBE = "probe_entry_sum"
FD_STEP = 1e-5
RADIUS_RANGE = (0.1, 2.0)
NEGATIVE_CONTROL_MIN = 1e-3

_SALT = {"radiality": 11, "fundamental": 12, "k_invariance": 13, "fd_convergence": 14}


def point(g) -> np.ndarray:
    """``g Theta(g)^{-1} = g g^T``."""
    g = np.asarray(g, dtype=float)
    return g @ g.T


@dataclass(frozen=True)
class InvariantFunction:
    """``g -> phi(g Theta(g)^{-1})`` for a fixed choice of ``phi``.

    ``probe_entry_sum`` (the sum of all entries of ``p``) is well defined
    on G/K but not left K-invariant; it serves as a negative control.
    """

    kind: str

    def __post_init__(self):
        if self.kind not in KINDS + (PROBE,):
            raise ValueError(f"unknown function kind {self.kind!r}")

    @property
    def invariant(self) -> bool:
        return self.kind in KINDS

    def __call__(self, g) -> float:
        p = point(g)
        if self.kind == "trace_p":
            return float(np.trace(p))
        if self.kind == "trace_p2":
            return float(np.sum(p * p))
        if self.kind == "trace_p_inv":
            return float(np.trace(np.linalg.inv(p)))
        return float(np.sum(p))

    def derivative_along(self, M, g) -> float:
        """Exact ``d/dt F(exp(-tM) g)`` at ``t = 0``."""
        p = point(g)
        dp = -M @ p - p @ M.T
        if self.kind == "trace_p":
            return float(np.trace(dp))
        if self.kind == "trace_p2":
            return float(2.0 * np.sum(p * dp))
        if self.kind == "trace_p_inv":
            pinv = np.linalg.inv(p)
            return float(-np.trace(pinv @ dp @ pinv))
        return float(np.sum(dp))


@dataclass
class RadialitySample:
    root: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    norm: float
    fX: float
    fY: float

    @property
    def delta(self) -> float:
        return abs(self.fX - self.fY)


def f_lambda(L: LieAlgebra, C: CartanData, datum: RootDatum, F: InvariantFunction, index: int, X,
             member_tol: float = DEFAULT_TOL) -> float:
    """``F(exp(X))`` for ``X`` in the root space ``index``."""
    X = _require_member(C, datum, index, X, member_tol)
    return F(numkit.expm(L.matrix(X)))


def fundamental_derivative(L: LieAlgebra, C: CartanData, datum: RootDatum, F: InvariantFunction,
                           Xm, g, h: float = FD_STEP, member_tol: float = DEFAULT_TOL) -> float:
    """Central difference of ``t -> F(exp(-t Xm) g)`` at 0, for ``Xm`` in m."""
    Xm = np.asarray(Xm, dtype=float)
    res = C.norm(numkit.project(datum.m_frame, Xm)[1])
    if res > member_tol * max(1.0, C.norm(Xm)):
        raise MembershipFailure("element of m", res, member_tol)
    return central_difference(F, L.matrix(Xm), g, h)


def central_difference(F, M, g, h: float) -> float:
    return (F(numkit.expm(-h * M) @ g) - F(numkit.expm(h * M) @ g)) / (2.0 * h)


def equal_norm_pair(datum: RootDatum, index: int, rng: np.random.Generator):
    """Random ``X``, and ``Y`` = a random rotation of ``X`` inside the root space."""
    space = datum.spaces[index]
    radius = rng.uniform(*RADIUS_RANGE)
    coeffs = rng.standard_normal(space.dim)
    coeffs *= radius / np.linalg.norm(coeffs)
    q, r = np.linalg.qr(rng.standard_normal((space.dim, space.dim)))
    q = q * np.sign(np.diag(r))
    return space.combine(coeffs), space.combine(q @ coeffs), radius**2


def draw_sample(L, C, datum, F, index, rng) -> RadialitySample:
    X, Y, norm = equal_norm_pair(datum, index, rng)
    return RadialitySample(datum.roots[index], X, Y, norm,
                           f_lambda(L, C, datum, F, index, X), f_lambda(L, C, datum, F, index, Y))


def radiality_check(L: LieAlgebra, C: CartanData, datum: RootDatum, F: InvariantFunction, index: int,
                    samples: int = 100, tol: float = 1e-8, seed: int = 42,
                    h: float = FD_STEP) -> VerificationReport:
    """Compare ``f_lam`` on equal-norm pairs and along the tangent directions ``[Y, M]``."""
    mult = datum.spaces[index].dim
    if mult < 2:
        raise MultiplicityTooSmall(f"root space has multiplicity {mult}; need at least 2")
    lam = datum.roots[index]
    max_delta = 0.0
    max_tangent = 0.0
    for t in range(samples):
        rng = trial_rng(seed, _SALT["radiality"], index, t)
        sample = draw_sample(L, C, datum, F, index, rng)
        max_delta = max(max_delta, sample.delta)
        base = L.matrix(sample.Y)
        for M in datum.m_frame.vectors:
            D = L.matrix(L.bracket(sample.Y, M))
            up = F(numkit.expm(base + h * D))
            down = F(numkit.expm(base - h * D))
            deriv = abs(up - down) / (2.0 * h)
            max_tangent = max(max_tangent, deriv / (1.0 + abs(sample.fY)))

    report = VerificationReport()
    report.add("radiality_delta", L.name, lam, samples, max_delta, tol, seed,
               function_kind=F.kind, max_delta=max_delta)
    report.add("radiality_tangential", L.name, lam, samples, max_tangent, 1e-6, seed,
               function_kind=F.kind, max_delta=max_delta)
    return report


def negative_control(L, C, datum, index, samples=100, seed=42,
                     threshold=NEGATIVE_CONTROL_MIN) -> VerificationReport:
    """The non-invariant probe must visibly break radiality; passes iff it does."""
    probe = radiality_check(L, C, datum, InvariantFunction(PROBE), index, samples, 1e-8, seed)
    delta = probe.by_check("radiality_delta")[0].max_residual
    report = VerificationReport()
    report.add("negative_control", L.name, datum.roots[index], samples, delta, threshold, seed,
               passed=delta > threshold, function_kind=PROBE, max_delta=delta)
    return report


def fundamental_check(L, C, datum, F, samples=50, tol=1e-6, seed=42, h=FD_STEP) -> VerificationReport:
    """``|X*F|`` at random ``g = exp(root vector)`` for random ``Xm`` in m."""
    worst = 0.0
    if datum.m_dim:
        for t in range(samples):
            rng = trial_rng(seed, _SALT["fundamental"], t)
            Xm = datum.m_frame.random_unit(rng) * rng.uniform(0.1, 1.0)
            i = int(rng.integers(len(datum.spaces)))
            X = datum.spaces[i].random_unit(rng) * rng.uniform(*RADIUS_RANGE)
            g = numkit.expm(L.matrix(X))
            d = fundamental_derivative(L, C, datum, F, Xm, g, h)
            worst = max(worst, abs(d) / (1.0 + abs(F(g))))
    report = VerificationReport()
    report.add("fundamental_derivative", L.name, None, samples if datum.m_dim else 0, worst, tol, seed,
               function_kind=F.kind)
    return report


def k_invariance(L, C, F, samples=50, tol=1e-10, seed=42) -> VerificationReport:
    """``F(k g) = F(g) = F(g k)`` for ``k = exp(k-element)``, ``g = exp(p-element)``."""
    worst = 0.0
    for t in range(samples):
        rng = trial_rng(seed, _SALT["k_invariance"], t)
        k = numkit.expm(L.matrix(C.k_frame.random_unit(rng) * rng.uniform(0.0, 1.0)))
        g = numkit.expm(L.matrix(C.p_frame.random_unit(rng) * rng.uniform(0.0, 1.0)))
        fg = F(g)
        scale = 1.0 + abs(fg)
        worst = max(worst, abs(F(k @ g) - fg) / scale, abs(F(g @ k) - fg) / scale)
    report = VerificationReport()
    report.add("k_invariance", L.name, None, samples, worst, tol, seed, function_kind=F.kind)
    return report


def fd_convergence_ratio(L, C, datum, F, h=1e-2, seed=42) -> float:
    """Ratio of central-difference errors at ``h`` and ``h/2`` against the exact derivative.

    For a smooth function and a second-order stencil the ratio is close to 4.
    Uses a random direction in the whole algebra so that the derivative is
    not trivially zero.
    """
    rng = trial_rng(seed, _SALT["fd_convergence"])
    d = L.dim
    M = L.matrix(rng.standard_normal(d) / np.sqrt(d))
    g = numkit.expm(L.matrix(C.p_frame.random_unit(rng)))
    exact = F.derivative_along(M, g)
    e1 = abs(central_difference(F, M, g, h) - exact)
    e2 = abs(central_difference(F, M, g, h / 2) - exact)
    return e1 / e2


def eligible_roots(datum: RootDatum) -> list[int]:
    return [i for i, s in enumerate(datum.spaces) if s.dim >= 2]


def run_radiality(L, C, datum, kinds=("trace_p", "trace_p2"), samples=100, tol=1e-8, seed=42,
                  fd_samples=50, with_control=True) -> VerificationReport:
    """All radiality checks for every root of multiplicity at least 2."""
    indices = eligible_roots(datum)
    if not indices:
        raise MultiplicityTooSmall(f"{L.name} has no root of multiplicity >= 2")
    report = VerificationReport()
    for kind in kinds:
        F = InvariantFunction(kind)
        report.extend(k_invariance(L, C, F, 50, min(1e-10, tol), seed))
        report.extend(fundamental_check(L, C, datum, F, fd_samples, 1e-6, seed))
        for i in indices:
            report.extend(radiality_check(L, C, datum, F, i, samples, tol, seed))
    if with_control:
        for i in indices:
            report.extend(negative_control(L, C, datum, i, samples, seed))
    return report
