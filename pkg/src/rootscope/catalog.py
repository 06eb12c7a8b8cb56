"""Classical real forms with their standard Cartan data.

Every realization is chosen stable under transposition so that the Cartan
involution is ``X -> -X^T`` throughout, and at group level
``Theta(g) = (g^T)^{-1}``. The complex family su(p, q) is realified by
replacing each entry ``a + ib`` with the block ``[[a, -b], [b, a]]``.

Spec strings follow the CLI grammar: ``"sl 3"``, ``"su 2 1"``,
``"so 1 4"``, ``"sp 4"`` (the last being sp(4, R)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import liealg, numkit
from .errors import Degenerate, InvalidParams, MaximalityFailure, NotInGroup
from .liealg import CartanData, LieAlgebra

FAMILIES = ("sl_real", "su_pq", "so_pq", "sp_real")
_KEYWORDS = {"sl": "sl_real", "su": "su_pq", "so": "so_pq", "sp": "sp_real"}
GROUP_TOL = 1e-9

_J2 = np.array([[0.0, -1.0], [1.0, 0.0]])


@dataclass(frozen=True)
class AlgebraSpec:
    family: str
    params: tuple[int, ...]

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidParams(f"unknown family {self.family!r}")
        params = tuple(self.params)
        object.__setattr__(self, "params", params)
        if self.family in ("sl_real", "sp_real"):
            if len(params) != 1:
                raise InvalidParams(f"{self.family} takes one parameter")
            (n,) = params
            if n < 2:
                raise InvalidParams(f"need n >= 2, got {n}")
            if self.family == "sp_real" and n % 2:
                raise InvalidParams(f"sp takes an even size 2n, got {n}")
        else:
            if len(params) != 2:
                raise InvalidParams(f"{self.family} takes two parameters p q")
            p, q = params
            if p < 1 or q < 1:
                raise InvalidParams(f"need p, q >= 1, got {p}, {q}")
            if self.family == "so_pq" and p + q < 3:
                raise InvalidParams("so(1,1) is not semisimple")

    @property
    def label(self) -> str:
        if self.family == "sl_real":
            return f"sl({self.params[0]},R)"
        if self.family == "sp_real":
            return f"sp({self.params[0]},R)"
        head = "su" if self.family == "su_pq" else "so"
        return f"{head}({self.params[0]},{self.params[1]})"

    @property
    def spec_string(self) -> str:
        key = {v: k for k, v in _KEYWORDS.items()}[self.family]
        return " ".join([key, *map(str, self.params)])


def parse_spec(text: str | list[str]) -> AlgebraSpec:
    """Parse ``"su 2 1"`` (or the token list) into an :class:`AlgebraSpec`."""
    tokens = text.split() if isinstance(text, str) else list(text)
    if not tokens:
        raise InvalidParams("empty algebra spec")
    key = tokens[0].lower()
    if key not in _KEYWORDS:
        raise InvalidParams(f"unknown family {tokens[0]!r}; expected one of sl, su, so, sp")
    try:
        params = tuple(int(t) for t in tokens[1:])
    except ValueError as exc:
        raise InvalidParams(f"parameters must be integers: {tokens[1:]}") from exc
    return AlgebraSpec(_KEYWORDS[key], params)


def list_catalog() -> list[AlgebraSpec]:
    return [parse_spec(s) for s in ("sl 2", "sl 3", "sl 4", "su 2 1", "so 1 4", "so 2 3", "sp 4")]


def _unit(n, i, j):
    m = np.zeros((n, n))
    m[i, j] = 1.0
    return m


def realify(M) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    return np.kron(M.real, np.eye(2)) + np.kron(M.imag, _J2)


def derealify(R) -> np.ndarray:
    R = np.asarray(R, dtype=float)
    return R[0::2, 0::2] + 1j * R[1::2, 0::2]


def _sl_basis(n):
    basis = [_unit(n, i, j) for i in range(n) for j in range(n) if i != j]
    basis += [_unit(n, i, i) - _unit(n, i + 1, i + 1) for i in range(n - 1)]
    return basis, [_unit(n, i, i) - _unit(n, i + 1, i + 1) for i in range(n - 1)]


def _so_basis(p, q):
    n = p + q
    basis = []
    for lo, hi in ((0, p), (p, n)):
        for i in range(lo, hi):
            for j in range(i + 1, hi):
                basis.append(_unit(n, i, j) - _unit(n, j, i))
    for i in range(p):
        for j in range(p, n):
            basis.append(_unit(n, i, j) + _unit(n, j, i))
    r = min(p, q)
    a = [_unit(n, i, p + i) + _unit(n, p + i, i) for i in range(r)]
    return basis, a


def _su_basis(p, q):
    n = p + q
    basis = []
    for i in range(n - 1):
        basis.append(1j * (_unit(n, i, i) - _unit(n, i + 1, i + 1)))
    for lo, hi in ((0, p), (p, n)):
        for i in range(lo, hi):
            for j in range(i + 1, hi):
                basis.append(_unit(n, i, j) - _unit(n, j, i))
                basis.append(1j * (_unit(n, i, j) + _unit(n, j, i)))
    for i in range(p):
        for j in range(p, n):
            basis.append(_unit(n, i, j) + _unit(n, j, i))
            basis.append(1j * (_unit(n, i, j) - _unit(n, j, i)))
    r = min(p, q)
    a = [_unit(n, i, p + i) + _unit(n, p + i, i) for i in range(r)]
    return [realify(b) for b in basis], [realify(x) for x in a]


def _sp_basis(n):
    size = 2 * n
    basis = []
    for i in range(n):
        for j in range(n):
            basis.append(_unit(size, i, j) - _unit(size, n + j, n + i))
    for i in range(n):
        for j in range(i, n):
            sym = _unit(n, i, j) + _unit(n, j, i) if i != j else _unit(n, i, i)
            up = np.zeros((size, size))
            up[:n, n:] = sym
            basis.append(up)
            basis.append(up.T.copy())
    a = [_unit(size, i, i) - _unit(size, n + i, n + i) for i in range(n)]
    return basis, a


def realization(spec: AlgebraSpec):
    """Matrix basis of the algebra and of its standard maximal abelian subspace."""
    if spec.family == "sl_real":
        return _sl_basis(spec.params[0])
    if spec.family == "so_pq":
        return _so_basis(*spec.params)
    if spec.family == "su_pq":
        return _su_basis(*spec.params)
    return _sp_basis(spec.params[0] // 2)


def transpose_involution(L: LieAlgebra) -> np.ndarray:
    """Coordinate matrix of ``X -> -X^T``."""
    return np.column_stack([L.coords(-b.T) for b in L.basis])


def build(spec: AlgebraSpec) -> tuple[LieAlgebra, CartanData]:
    """Construct the algebra, its Cartan involution and maximal abelian subspace."""
    basis, a_mats = realization(spec)
    try:
        L = liealg.from_basis(basis, name=spec.label)
    except Degenerate as exc:
        raise InvalidParams(f"{spec.label} is not semisimple") from exc
    C = liealg.cartan_split(L, transpose_involution(L))
    if C.p_frame.dim == 0:
        raise InvalidParams(f"{spec.label} is compact")
    C = liealg.with_abelian(L, C, [L.coords(a) for a in a_mats])
    cent = liealg.centralizer(L, C.a_frame, C.p_frame)
    if cent.dim != C.a_frame.dim:
        raise MaximalityFailure(
            f"centralizer of a in p has dim {cent.dim}, expected {C.a_frame.dim}"
        )
    return L, C


def _form(spec: AlgebraSpec):
    """Bilinear form preserved by the group, or None for SL."""
    if spec.family == "so_pq":
        p, q = spec.params
        return np.diag([1.0] * p + [-1.0] * q)
    if spec.family == "su_pq":
        p, q = spec.params
        return realify(np.diag([1.0] * p + [-1.0] * q))
    if spec.family == "sp_real":
        n = spec.params[0] // 2
        return np.block([[np.zeros((n, n)), np.eye(n)], [-np.eye(n), np.zeros((n, n))]])
    return None


def group_residual(spec: AlgebraSpec, g) -> float:
    """How far ``g`` is from satisfying the defining equations of the group."""
    g = np.asarray(g, dtype=float)
    scale = 1.0 + np.linalg.norm(g) ** 2
    res = 0.0
    if spec.family == "su_pq":
        J = np.kron(np.eye(g.shape[0] // 2), _J2)
        res = max(res, np.linalg.norm(g @ J - J @ g) / scale)
        det = np.linalg.det(derealify(g))
    else:
        det = np.linalg.det(g)
    res = max(res, abs(det - 1.0))
    form = _form(spec)
    if form is not None:
        res = max(res, np.linalg.norm(g.T @ form @ g - form) / scale)
    return float(res)


def group_involution(spec: AlgebraSpec, g, tol: float = GROUP_TOL) -> np.ndarray:
    """``Theta(g) = (g^T)^{-1}``, the group involution integrating ``X -> -X^T``."""
    g = numkit.as_mat(g)
    res = group_residual(spec, g)
    if res > tol:
        raise NotInGroup(f"matrix is not in the group of {spec.label} (residual {res:.3e})")
    return np.linalg.inv(g.T)


def k_membership(spec: AlgebraSpec, g, tol: float = GROUP_TOL) -> bool:
    """Whether ``g`` is a fixed point of the group involution."""
    try:
        theta = group_involution(spec, g, tol)
    except NotInGroup:
        return False
    g = np.asarray(g, dtype=float)
    return bool(np.linalg.norm(theta - g) <= tol * (1.0 + np.linalg.norm(g)))
