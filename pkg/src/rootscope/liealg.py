"""Structure-constant Lie algebras, Killing form and Cartan involutions.

Elements of an algebra are handled as coordinate vectors in a fixed basis.
Matrices only appear in the realization (``LieAlgebra.basis``), which is
used to derive the structure constants and later to exponentiate.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import numkit
from .errors import (
    Degenerate,
    DimensionMismatch,
    NotAbelian,
    NotAutomorphism,
    NotClosed,
    NotInvolution,
    NotPD,
)
from .numkit import Frame

CLOSURE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """A real Lie algebra given by a matrix basis.

    ``structure[i, j, k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``.
    ``killing[i, j] = trace(ad e_i ad e_j)``.
    """

    basis: np.ndarray
    structure: np.ndarray
    killing: np.ndarray
    name: str = ""

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def matrix_size(self) -> int:
        return self.basis.shape[1]

    def _check(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise DimensionMismatch(f"expected coordinates of length {self.dim}, got {x.shape}")
        return x

    def bracket(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", self._check(x), self._check(y), self.structure)

    def ad(self, x) -> np.ndarray:
        # ad(x)[k, j] = sum_i x_i c[i, j, k]
        return np.einsum("i,ijk->kj", self._check(x), self.structure)

    def ad_basis(self) -> np.ndarray:
        """Stack of ``ad(e_i)``, shape ``(dim, dim, dim)``."""
        return np.transpose(self.structure, (0, 2, 1))

    def killing_form(self, x, y) -> float:
        return float(self._check(x) @ self.killing @ self._check(y))

    def matrix(self, x) -> np.ndarray:
        """Matrix realization of the element with coordinates ``x``."""
        return np.tensordot(self._check(x), self.basis, axes=1)

    def coords(self, M, tol: float = CLOSURE_TOL) -> np.ndarray:
        """Coordinates of a matrix in the basis; raises NotClosed if outside the span."""
        M = np.asarray(M, dtype=float)
        flat = self.basis.reshape(self.dim, -1)
        x, *_ = np.linalg.lstsq(flat.T, M.ravel(), rcond=None)
        resid = np.linalg.norm(flat.T @ x - M.ravel())
        if resid > tol * (1.0 + np.linalg.norm(M)):
            raise NotClosed(f"matrix lies outside the span of the basis (residual {resid:.3e})")
        return x


def from_basis(matrices, name: str = "", tol: float = CLOSURE_TOL) -> LieAlgebra:
    """Build a :class:`LieAlgebra` from a linearly independent matrix basis."""
    basis = np.array([numkit.as_mat(m) for m in matrices])
    d, n, _ = basis.shape
    flat = basis.reshape(d, -1)
    if numkit.rank(flat, tol) < d:
        raise Degenerate("basis matrices are linearly dependent")

    comm = np.einsum("iab,jbc->ijac", basis, basis)
    comm = comm - np.transpose(comm, (1, 0, 2, 3))
    rhs = comm.reshape(d * d, -1).T
    sol, *_ = np.linalg.lstsq(flat.T, rhs, rcond=None)
    resid = np.linalg.norm(flat.T @ sol - rhs, axis=0)
    scale = 1.0 + np.linalg.norm(rhs, axis=0)
    if np.any(resid > tol * scale):
        raise NotClosed(f"commutators leave the span (max residual {np.max(resid / scale):.3e})")
    structure = sol.T.reshape(d, d, d)
    structure = 0.5 * (structure - np.transpose(structure, (1, 0, 2)))

    ads = np.transpose(structure, (0, 2, 1))
    killing = np.einsum("ikl,jlk->ij", ads, ads)
    killing = 0.5 * (killing + killing.T)
    if numkit.rank(killing, tol) < d:
        raise Degenerate("Killing form is degenerate; the algebra is not semisimple")
    return LieAlgebra(basis=basis, structure=structure, killing=killing, name=name)


def jacobi_residual(L: LieAlgebra) -> float:
    """Max |Jacobi identity| over all basis triples."""
    c = L.structure
    # [[e_i, e_j], e_k] summed cyclically
    t = np.einsum("ijm,mkl->ijkl", c, c)
    cyc = t + np.transpose(t, (1, 2, 0, 3)) + np.transpose(t, (2, 0, 1, 3))
    return float(np.max(np.abs(cyc)))


@dataclass(frozen=True, eq=False)
class CartanData:
    """Cartan involution with its eigenspace frames.

    ``gram`` is the Gram matrix of ``beta_sigma(x, y) = -B(x, sigma y)``; all
    frames are orthonormal with respect to it. ``a_frame`` is ``None`` until
    a maximal abelian subspace has been attached with :func:`with_abelian`.
    """

    sigma: np.ndarray
    gram: np.ndarray
    k_frame: Frame
    p_frame: Frame
    a_frame: Frame | None = None

    def apply(self, x) -> np.ndarray:
        return self.sigma @ np.asarray(x, dtype=float)

    def norm(self, x) -> float:
        x = np.asarray(x, dtype=float)
        return float(np.sqrt(max(x @ self.gram @ x, 0.0)))


def beta_sigma(L: LieAlgebra, C: CartanData, x, y) -> float:
    return -L.killing_form(x, C.apply(y))


def automorphism_residual(L: LieAlgebra, sigma) -> float:
    """Max over basis pairs of |sigma[e_i, e_j] - [sigma e_i, sigma e_j]|."""
    s = np.asarray(sigma, dtype=float)
    lhs = np.einsum("ijk,lk->ijl", L.structure, s)
    rhs = np.einsum("ai,bj,abl->ijl", s, s, L.structure)
    return float(np.max(np.abs(lhs - rhs)))


def cartan_split(L: LieAlgebra, sigma, tol: float = 1e-10) -> CartanData:
    """Split into the +1 (k) and -1 (p) eigenspaces of ``sigma``."""
    sigma = numkit.as_mat(sigma)
    d = L.dim
    if sigma.shape != (d, d):
        raise DimensionMismatch(f"sigma must be {d}x{d}")
    if np.max(np.abs(sigma @ sigma - np.eye(d))) > 100 * tol:
        raise NotInvolution("sigma^2 differs from the identity")
    if automorphism_residual(L, sigma) > tol * (1.0 + np.max(np.abs(L.structure))):
        raise NotAutomorphism("sigma does not preserve brackets")

    gram = -L.killing @ sigma
    gram = 0.5 * (gram + gram.T)
    try:
        np.linalg.cholesky(gram)
    except np.linalg.LinAlgError as exc:
        raise NotPD("beta_sigma is not positive definite; sigma is not a Cartan involution") from exc

    k_vecs = numkit.nullspace(sigma - np.eye(d), tol).vectors
    p_vecs = numkit.nullspace(sigma + np.eye(d), tol).vectors
    k_frame = numkit.orthonormalize(k_vecs, gram)
    p_frame = numkit.orthonormalize(p_vecs, gram)
    if k_frame.dim + p_frame.dim != d:
        raise NotInvolution("eigenspaces of sigma do not span the algebra")
    cross = k_frame.vectors @ L.killing @ p_frame.vectors.T if k_frame.dim and p_frame.dim else np.zeros(1)
    if np.max(np.abs(cross)) > tol * (1.0 + np.max(np.abs(L.killing))):
        raise NotAutomorphism("k and p are not Killing-orthogonal")
    return CartanData(sigma=sigma, gram=gram, k_frame=k_frame, p_frame=p_frame)


def with_abelian(L: LieAlgebra, C: CartanData, a_vectors, tol: float = 1e-10) -> CartanData:
    """Attach an abelian subspace of p, checking membership and commutativity."""
    a_frame = numkit.orthonormalize(a_vectors, C.gram)
    if a_frame.dim == 0:
        raise Degenerate("the abelian subspace is trivial")
    for v in a_frame.vectors:
        _, r = numkit.project(C.p_frame, v)
        if C.norm(r) > tol:
            raise NotAbelian(f"abelian candidate is not contained in p (residual {C.norm(r):.3e})")
    for i in range(a_frame.dim):
        for j in range(i + 1, a_frame.dim):
            b = L.bracket(a_frame.vectors[i], a_frame.vectors[j])
            if C.norm(b) > tol:
                raise NotAbelian("abelian candidate does not commute")
    restricted = a_frame.vectors @ L.killing @ a_frame.vectors.T
    try:
        np.linalg.cholesky(restricted)
    except np.linalg.LinAlgError as exc:
        raise NotPD("Killing form is not positive definite on the abelian subspace") from exc
    return replace(C, a_frame=a_frame)


def centralizer(L: LieAlgebra, elements: Frame, within: Frame, tol: float = numkit.TOL_RESIDUAL) -> Frame:
    """Orthonormal frame of ``{x in within : [h, x] = 0 for every frame vector h}``."""
    if within.dim == 0:
        return Frame(np.zeros((0, L.dim)), within.gram)
    W = within.matrix
    stacked = np.vstack([L.ad(h) @ W for h in elements.vectors])
    ker = numkit.nullspace(stacked, tol)
    return numkit.orthonormalize(ker.vectors @ W.T, within.gram)
