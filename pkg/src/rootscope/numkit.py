"""Dense real linear algebra kernels.

Matrices are plain ``numpy`` arrays. Subspaces are carried around as
:class:`Frame` objects: a stack of coordinate vectors that are orthonormal
with respect to a positive-definite Gram matrix.

All rank decisions in the package go through :func:`rank_threshold`, an
absolute cut-off ``tol * (1 + ||A||_2)``, so dimension counts stay
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, GramNotPD, NoConvergence, NonSymmetric, NotPD

TOL_ORTHO = 1e-10
TOL_RESIDUAL = 1e-9
MAX_SWEEPS = 100


def as_mat(a) -> np.ndarray:
    """Validate and convert ``a`` to a finite 2-D float array."""
    m = np.array(a, dtype=float)
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise DimensionMismatch(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


@dataclass(frozen=True, eq=False)
class Frame:
    """Orthonormal family of coordinate vectors under ``gram``.

    ``vectors`` has shape ``(k, n)``; row ``i`` is the ``i``-th frame vector.
    """

    vectors: np.ndarray
    gram: np.ndarray

    def __post_init__(self):
        n = self.gram.shape[0]
        vecs = np.asarray(self.vectors, dtype=float).reshape(-1, n)
        object.__setattr__(self, "vectors", vecs)

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.gram.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        """Frame vectors as columns, shape ``(n, k)``."""
        return self.vectors.T

    def coefficients(self, v) -> np.ndarray:
        return self.vectors @ (self.gram @ np.asarray(v, dtype=float))

    def combine(self, coeffs) -> np.ndarray:
        return np.asarray(coeffs, dtype=float) @ self.vectors

    def norm(self, v) -> float:
        v = np.asarray(v, dtype=float)
        return float(np.sqrt(max(v @ self.gram @ v, 0.0)))

    def orthogonality_defect(self) -> float:
        """Max entrywise deviation of the frame's Gram matrix from identity."""
        if self.dim == 0:
            return 0.0
        g = self.vectors @ self.gram @ self.vectors.T
        return float(np.max(np.abs(g - np.eye(self.dim))))

    def random_unit(self, rng: np.random.Generator) -> np.ndarray:
        """Uniform random vector on the unit sphere of the span."""
        if self.dim == 0:
            raise ValueError("cannot sample from an empty frame")
        c = rng.standard_normal(self.dim)
        return self.combine(c / np.linalg.norm(c))


def sym_eig(S, tol: float = TOL_ORTHO, max_sweeps: int = MAX_SWEEPS):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(eigenvalues, frame)`` with eigenvalues in descending order and
    the matching eigenvectors as rows of an identity-Gram :class:`Frame`.
    Each eigenvector is signed so that its first non-negligible entry is
    positive.
    """
    a = as_mat(S)
    n = a.shape[0]
    if a.shape[1] != n:
        raise DimensionMismatch("sym_eig needs a square matrix")
    scale = np.linalg.norm(a)
    if np.linalg.norm(a - a.T) > tol * scale:
        raise NonSymmetric(f"asymmetry {np.linalg.norm(a - a.T):.3e} exceeds tol*||S||")
    a = 0.5 * (a + a.T)
    v = np.eye(n)
    eps = np.finfo(float).eps

    # entries below this are treated as converged; a sweep with no rotation ends the loop
    small = max(eps * scale / max(n, 1), 1e-300)
    for _ in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= small:
                    continue
                rotated = True
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta == 0.0:
                    t = 1.0
                elif abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        if not rotated:
            break
    else:
        raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")

    w = np.diag(a).copy()
    order = np.argsort(-w, kind="stable")
    w = w[order]
    vecs = v[:, order].T
    for row in vecs:
        big = np.flatnonzero(np.abs(row) > 1e-8)
        if big.size and row[big[0]] < 0:
            row *= -1.0
    return w, Frame(vecs, np.eye(n))


def rank_threshold(A, tol: float) -> float:
    A = np.asarray(A, dtype=float)
    norm = np.linalg.norm(A, 2) if A.size else 0.0
    return tol * (1.0 + norm)


def _svd(A):
    A = np.asarray(A, dtype=float)
    if A.ndim != 2:
        raise DimensionMismatch("expected a 2-D matrix")
    if A.size == 0:
        return np.zeros(0), np.eye(A.shape[1])
    _, s, vt = np.linalg.svd(A, full_matrices=True)
    return s, vt


def rank(A, tol: float = TOL_RESIDUAL) -> int:
    """Numerical rank with the package-wide threshold."""
    s, _ = _svd(A)
    return int(np.sum(s > rank_threshold(A, tol)))


def nullspace(A, tol: float = TOL_RESIDUAL) -> Frame:
    """Orthonormal (Euclidean) basis of the numerical kernel of ``A``."""
    s, vt = _svd(A)
    r = int(np.sum(s > rank_threshold(A, tol)))
    n = vt.shape[1]
    return Frame(vt[r:].copy(), np.eye(n))


def orthonormalize(vectors, gram, tol: float = TOL_ORTHO) -> Frame:
    """Rank-revealing Gram-Schmidt under ``gram``.

    Modified Gram-Schmidt with one re-orthogonalisation pass. Vectors whose
    residual norm after projection falls below ``tol`` are dropped.
    """
    gram = as_mat(gram)
    n = gram.shape[0]
    vecs = np.asarray(vectors, dtype=float).reshape(-1, n) if np.size(vectors) else np.zeros((0, n))
    out = []
    for v in vecs:
        w = v.copy()
        for _ in range(2):
            for e in out:
                w -= (e @ gram @ w) * e
        sq = w @ gram @ w
        if sq <= 0.0 and np.linalg.norm(w) > tol:
            raise GramNotPD(f"non-positive Gram norm {sq:.3e} on a nonzero vector")
        nrm = np.sqrt(max(sq, 0.0))
        if nrm < tol:
            continue
        out.append(w / nrm)
    return Frame(np.array(out).reshape(-1, n), gram)


def solve_spd(A, b, tol: float = TOL_RESIDUAL) -> np.ndarray:
    """Solve ``A x = b`` for symmetric positive-definite ``A`` via Cholesky."""
    A = as_mat(A)
    b = np.asarray(b, dtype=float)
    if A.shape[0] != A.shape[1] or b.shape[0] != A.shape[0]:
        raise DimensionMismatch(f"cannot solve {A.shape} system with rhs {b.shape}")
    try:
        factor = scipy.linalg.cho_factor(A, lower=True)
    except np.linalg.LinAlgError as exc:
        raise NotPD(str(exc)) from exc
    x = scipy.linalg.cho_solve(factor, b)
    if np.linalg.norm(A @ x - b) > tol * (1.0 + np.linalg.norm(b)) * max(1.0, np.linalg.cond(A)):
        raise NotPD("Cholesky solve residual too large")
    return x


def expm(A) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a Taylor kernel.

    ``A`` is scaled by ``2**-s`` until its 1-norm is at most 1/4, where an
    18-term Taylor polynomial is accurate to well below machine precision,
    then squared back ``s`` times.
    """
    A = as_mat(A)
    n = A.shape[0]
    if A.shape[1] != n:
        raise DimensionMismatch("expm needs a square matrix")
    norm = np.linalg.norm(A, 1)
    s = max(0, int(np.ceil(np.log2(norm / 0.25)))) if norm > 0.25 else 0
    B = A / 2.0**s
    result = np.eye(n)
    term = np.eye(n)
    for k in range(1, 19):
        term = term @ B / k
        result = result + term
    for _ in range(s):
        result = result @ result
    return result


def project(frame: Frame, v):
    """Split ``v`` into its component in ``frame`` and the residual."""
    v = np.asarray(v, dtype=float)
    if v.shape != (frame.ambient_dim,):
        raise DimensionMismatch(f"vector of shape {v.shape} vs frame ambient dim {frame.ambient_dim}")
    inside = frame.combine(frame.coefficients(v)) if frame.dim else np.zeros_like(v)
    return inside, v - inside
