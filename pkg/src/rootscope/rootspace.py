"""Restricted root space decomposition.

The joint eigenspaces of ``ad(a)`` are found from a single generic element
``H* = sum c_i A_i``: ``ad(H*)`` is self-adjoint for ``beta_sigma``, so it is
diagonalised in a ``beta_sigma``-orthonormal basis, its spectrum is
clustered, and every cluster is then checked to be a joint eigenspace of
all ``ad(A_i)``. Clusters that mix different covectors mean ``H*`` was not
generic, and a new one is drawn.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import numkit
from .errors import (
    ClusterAmbiguity,
    Degenerate,
    GenericityFailure,
    GramSingular,
    InconsistentDecomposition,
    NotPD,
)
from .liealg import CartanData, LieAlgebra, centralizer
from .numkit import Frame
from .report import VerificationReport

DEFAULT_TOL = 1e-9
DEFAULT_GAP = 1e-6
MAX_REDRAWS = 5


@dataclass(frozen=True, eq=False)
class RootDatum:
    """Roots, root spaces, m and coroots, in lexicographic root order.

    Roots are covectors given by their values on the ``a_frame`` vectors.
    ``spaces[i]``, ``coroots[i]`` belong to ``roots[i]``.
    """

    roots: tuple[np.ndarray, ...]
    spaces: tuple[Frame, ...]
    m_frame: Frame
    g0_frame: Frame
    a_frame: Frame
    coroots: tuple[np.ndarray, ...]
    tol: float
    seed: int

    @property
    def a_dim(self) -> int:
        return self.a_frame.dim

    @property
    def rank(self) -> int:
        return self.a_frame.dim

    @property
    def m_dim(self) -> int:
        return self.m_frame.dim

    @property
    def multiplicities(self) -> list[int]:
        return [s.dim for s in self.spaces]

    def root_scale(self) -> float:
        return max(float(np.max(np.abs(r))) for r in self.roots)

    def find_root(self, covector, rtol: float = 1e-6) -> int | None:
        """Index of the root equal to ``covector``, or None."""
        covector = np.asarray(covector, dtype=float)
        atol = rtol * self.root_scale()
        for i, r in enumerate(self.roots):
            if np.max(np.abs(r - covector)) <= atol:
                return i
        return None

    def is_zero(self, covector, rtol: float = 1e-6) -> bool:
        return bool(np.max(np.abs(covector)) <= rtol * self.root_scale())

    def root_value(self, index: int) -> float:
        """``lambda(H_lambda)`` for root ``index``."""
        return float(self.roots[index] @ self.a_frame.coefficients(self.coroots[index]))

    def to_dict(self, algebra: str, dim: int) -> dict:
        return {
            "algebra": algebra,
            "dim": int(dim),
            "rank": self.rank,
            "roots": [[float(v) for v in r] for r in self.roots],
            "multiplicities": self.multiplicities,
            "m_dim": self.m_dim,
            "tol": float(self.tol),
            "seed": int(self.seed),
        }


def beta_sigma_basis(C: CartanData) -> np.ndarray:
    """Columns form a ``beta_sigma``-orthonormal basis of the algebra."""
    chol = np.linalg.cholesky(C.gram)
    return scipy.linalg.solve_triangular(chol.T, np.eye(C.gram.shape[0]), lower=False)


def self_adjointness_residual(L: LieAlgebra, C: CartanData, h) -> float:
    """``||G ad(h) - ad(h)^T G||`` relative to ``||G|| ||ad(h)||``."""
    A = L.ad(h)
    G = C.gram
    return float(np.linalg.norm(G @ A - A.T @ G) / (np.linalg.norm(G) * (1e-300 + np.linalg.norm(A))))


def _cluster(values, gap):
    """Group indices of descending ``values`` wherever consecutive gaps exceed ``gap``."""
    groups = [[0]]
    for i in range(1, len(values)):
        if values[i - 1] - values[i] > gap:
            groups.append([i])
        else:
            groups[-1].append(i)
    return groups


def _try_decompose(S_list, Q, coeffs, tol, gap):
    Hs = sum(c * S for c, S in zip(coeffs, S_list))
    radius = np.linalg.norm(Hs, 2)
    w, frame = numkit.sym_eig(Hs / radius, tol=1e-10)
    V = frame.matrix
    scale = max(np.linalg.norm(S, 2) for S in S_list)
    clusters = []
    for idx in _cluster(w, gap):
        Vc = V[:, idx]
        cov = np.array([np.trace(Vc.T @ S @ Vc) / len(idx) for S in S_list])
        resid = max(np.linalg.norm(S @ Vc - c * Vc) for S, c in zip(S_list, cov))
        if resid > tol * scale * np.sqrt(len(idx)):
            return None
        clusters.append((cov, Vc))
    zero_tol = 1e-6 * scale
    roots, zero = [], None
    for cov, Vc in clusters:
        if np.max(np.abs(cov)) <= zero_tol:
            if zero is not None:
                return None
            zero = Vc
        else:
            roots.append((cov, Vc))
    if zero is None:
        zero = np.zeros((Q.shape[0], 0))
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if np.all(np.abs(roots[i][0] - roots[j][0]) < 10 * tol * max(1.0, scale)):
                raise ClusterAmbiguity("two spectral clusters carry the same covector")
    return roots, zero


def decompose(L: LieAlgebra, C: CartanData, tol: float = DEFAULT_TOL, seed: int = 42,
              gap: float = DEFAULT_GAP) -> RootDatum:
    """Compute the restricted roots, root spaces, m and coroots."""
    if C.a_frame is None or C.a_frame.dim == 0:
        raise Degenerate("Cartan data carries no abelian subspace")
    a_frame = C.a_frame
    for h in a_frame.vectors:
        res = self_adjointness_residual(L, C, h)
        if res > tol:
            raise InconsistentDecomposition(f"ad(H) is not beta_sigma self-adjoint (residual {res:.3e})")

    Q = beta_sigma_basis(C)
    Qinv = Q.T @ C.gram
    S_list = []
    for h in a_frame.vectors:
        S = Qinv @ L.ad(h) @ Q
        S_list.append(0.5 * (S + S.T))

    rng = np.random.default_rng(seed)
    result = None
    for _ in range(MAX_REDRAWS + 1):
        coeffs = rng.standard_normal(a_frame.dim)
        result = _try_decompose(S_list, Q, coeffs, tol, gap)
        if result is not None:
            break
    if result is None:
        raise GenericityFailure(f"no generic element found after {MAX_REDRAWS} redraws")
    raw_roots, zero = result

    raw_roots.sort(key=lambda rc: tuple(np.round(rc[0], 6)))
    roots = tuple(cov for cov, _ in raw_roots)
    spaces = tuple(Frame((Q @ Vc).T, C.gram) for _, Vc in raw_roots)
    g0_frame = Frame((Q @ zero).T, C.gram)

    m_frame = centralizer(L, a_frame, C.k_frame)
    _check_g0(C, a_frame, m_frame, g0_frame, tol)
    total = a_frame.dim + m_frame.dim + sum(s.dim for s in spaces)
    if total != L.dim:
        raise InconsistentDecomposition(f"dimension count {total} != dim {L.dim}")

    coroots = tuple(coroot(L, a_frame, cov, tol) for cov in roots)
    return RootDatum(roots=roots, spaces=spaces, m_frame=m_frame, g0_frame=g0_frame,
                     a_frame=a_frame, coroots=coroots, tol=tol, seed=seed)


def _check_g0(C, a_frame, m_frame, g0_frame, tol):
    """g0 = a + m, with m found both as a kernel in k and as a complement of a in g0."""
    if g0_frame.dim != a_frame.dim + m_frame.dim:
        raise InconsistentDecomposition(
            f"dim g0 = {g0_frame.dim} but dim a + dim m = {a_frame.dim + m_frame.dim}")
    for v in np.vstack([a_frame.vectors, m_frame.vectors]):
        _, r = numkit.project(g0_frame, v)
        if C.norm(r) > 1e3 * tol:
            raise InconsistentDecomposition("a or m is not contained in g0")
    complement = [numkit.project(a_frame, v)[1] for v in g0_frame.vectors]
    comp = numkit.orthonormalize(complement, C.gram, 1e-6)
    if comp.dim != m_frame.dim:
        raise InconsistentDecomposition("orthogonal complement of a in g0 has the wrong dimension")
    for v in comp.vectors:
        if C.norm(numkit.project(m_frame, v)[1]) > 1e3 * tol:
            raise InconsistentDecomposition("complement of a in g0 differs from the kernel in k")


def coroot(L: LieAlgebra, a_frame: Frame, covector, tol: float = DEFAULT_TOL) -> np.ndarray:
    """The element ``H`` of a with ``B(H, A_i) = covector_i`` for every frame vector."""
    A = a_frame.vectors
    gram = A @ L.killing @ A.T
    covector = np.asarray(covector, dtype=float)
    try:
        h = numkit.solve_spd(gram, covector)
    except NotPD as exc:
        raise GramSingular("Killing form restricted to a is not positive definite") from exc
    H = h @ A
    check = A @ L.killing @ H
    if np.max(np.abs(check - covector)) > tol * (1.0 + np.max(np.abs(covector))):
        raise GramSingular("coroot equation not satisfied")
    return H


def eigen_residual(L: LieAlgebra, C: CartanData, datum: RootDatum, index: int) -> float:
    """Max ``||[A_i, X] - lambda(A_i) X||`` over frame vectors X of root ``index``."""
    worst = 0.0
    for x in datum.spaces[index].vectors:
        for lam, h in zip(datum.roots[index], datum.a_frame.vectors):
            worst = max(worst, C.norm(L.bracket(h, x) - lam * x) / C.norm(x))
    return worst


def grading_check(L: LieAlgebra, C: CartanData, datum: RootDatum, tol: float = DEFAULT_TOL,
                  seed: int | None = None) -> VerificationReport:
    """Check the grading, sigma-symmetry and root-set properties of a decomposition."""
    seed = datum.seed if seed is None else seed
    name = L.name
    report = VerificationReport()
    total = datum.a_dim + datum.m_dim + sum(datum.multiplicities)
    report.add("completeness", name, None, 1, abs(L.dim - total), tol, seed, passed=total == L.dim)

    g0 = datum.g0_frame
    for i, lam in enumerate(datum.roots):
        report.add("eigen_residual", name, lam, datum.spaces[i].dim,
                   eigen_residual(L, C, datum, i), tol, seed)

        worst = 0.0
        for j, mu in enumerate(datum.roots):
            target_cov = lam + mu
            if datum.is_zero(target_cov):
                target = g0
            else:
                k = datum.find_root(target_cov)
                target = datum.spaces[k] if k is not None else None
            for x in datum.spaces[i].vectors:
                for y in datum.spaces[j].vectors:
                    z = L.bracket(x, y)
                    r = z if target is None else numkit.project(target, z)[1]
                    worst = max(worst, C.norm(r))
        report.add("grading", name, lam, len(datum.roots), worst, tol, seed)

        k = datum.find_root(-lam)
        if k is None:
            report.add("sigma_symmetry", name, lam, 1, np.inf, tol, seed, passed=False)
        else:
            worst = max(C.norm(numkit.project(datum.spaces[k], C.apply(x))[1])
                        for x in datum.spaces[i].vectors)
            same_dim = datum.spaces[k].dim == datum.spaces[i].dim
            report.add("sigma_symmetry", name, lam, datum.spaces[i].dim, worst, tol, seed,
                       passed=worst < tol and same_dim)

        H = datum.coroots[i]
        value = datum.root_value(i)
        resid = np.max(np.abs(datum.a_frame.vectors @ L.killing @ H - lam))
        report.add("coroot", name, lam, 1, resid, tol, seed, passed=resid < tol and value > 0)

    triples = sum(datum.find_root(3 * lam) is not None for lam in datum.roots)
    report.add("no_triple_root", name, None, len(datum.roots), triples, tol, seed, passed=triples == 0)
    return report
