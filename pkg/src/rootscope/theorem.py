"""Numerical verification of the orthogonal splitting of restricted root spaces.

For a root ``lam`` and nonzero ``X`` in ``g_lam`` the checks here confirm

* ``[X, sigma X] = B(X, sigma X) H_lam``;
* ``[X, sigma Y] - B(X, sigma Y) H_lam`` lies in ``m`` for ``X, Y`` in ``g_lam``;
* ``[m, X]`` equals the ``beta_sigma``-orthogonal complement of ``X`` in
  ``g_lam``, so that ``g_lam = R X + [m, X]``;
* the constructive argument producing, for ``X'`` orthogonal to ``X``, an
  element ``M`` of ``m`` with ``[M, X] = X'``.

Convention: witnesses satisfy ``[M, X] = X'`` (``M`` on the left).

Norms are ``beta_sigma`` norms throughout, and residuals are made
scale-free so the same tolerance applies to any sample.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import numkit
from .errors import IdentityFailure, MembershipFailure, NotInRootSpace, NotPerp, ZeroVector
from .liealg import CartanData, LieAlgebra
from .numkit import Frame
from .report import VerificationReport, trial_rng
from .rootspace import DEFAULT_TOL, RootDatum

# salts that keep the random streams of different checks apart
_SALT = {"relation1": 1, "relation1b": 2, "theorem1": 3, "reconstruct": 4, "corollaries": 5}
SUITES = ("relation1", "relation1b", "theorem1", "corollaries", "grading")

DIVISION_GUARD = 1e-12
RANK_TOL = 1e-8


def _require_member(C: CartanData, datum: RootDatum, index: int, X, tol: float) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    _, r = numkit.project(datum.spaces[index], X)
    res = C.norm(r) / max(1.0, C.norm(X))
    if res > tol:
        raise NotInRootSpace(res, tol)
    return X


def relation1_residual(L: LieAlgebra, C: CartanData, datum: RootDatum, index: int, X) -> float:
    sX = C.apply(X)
    lhs = L.bracket(X, sX)
    rhs = L.killing_form(X, sX) * datum.coroots[index]
    return C.norm(lhs - rhs) / (1.0 + C.norm(X) ** 2)


def verify_relation1(L, C, datum, index, X, tol=DEFAULT_TOL, member_tol=DEFAULT_TOL):
    """Residual of ``[X, sigma X] - B(X, sigma X) H_lam`` over ``1 + ||X||^2``."""
    X = _require_member(C, datum, index, X, member_tol)
    return relation1_residual(L, C, datum, index, X)


def _m_component(L, C, datum, index, X, Y):
    sY = C.apply(Y)
    W = L.bracket(X, sY) - L.killing_form(X, sY) * datum.coroots[index]
    scale = 1.0 + C.norm(X) * C.norm(Y)
    membership = C.norm(numkit.project(datum.m_frame, W)[1]) / scale
    against_a = datum.a_frame.vectors @ L.killing @ W
    orthogonality = float(np.max(np.abs(against_a))) / scale
    return W, membership, orthogonality


def m_component(L, C, datum, index, X, Y, tol=DEFAULT_TOL, member_tol=DEFAULT_TOL):
    """``W = [X, sigma Y] - B(X, sigma Y) H_lam``, checked to lie in m.

    Raises :class:`MembershipFailure` if ``W`` has a component outside m or
    pairs nontrivially with a under the Killing form.
    """
    X = _require_member(C, datum, index, X, member_tol)
    Y = _require_member(C, datum, index, Y, member_tol)
    W, membership, orthogonality = _m_component(L, C, datum, index, X, Y)
    if membership >= tol:
        raise MembershipFailure("m-membership", membership, tol)
    if orthogonality >= tol:
        raise MembershipFailure("Killing orthogonality to a", orthogonality, tol)
    return W


def bracket_m_space(L: LieAlgebra, datum: RootDatum, index: int, X,
                    member_tol: float = DEFAULT_TOL) -> Frame:
    """Orthonormal frame of ``[m, X]``, checked to lie inside ``g_lam``."""
    space = datum.spaces[index]
    X = np.asarray(X, dtype=float)
    nx = space.norm(X)
    if nx == 0.0:
        raise ZeroVector("[m, X] needs X != 0")
    images = [L.bracket(M, X) for M in datum.m_frame.vectors]
    frame = numkit.orthonormalize(images, space.gram, RANK_TOL * nx)
    for v in frame.vectors:
        res = space.norm(numkit.project(space, v)[1])
        if res > member_tol:
            raise MembershipFailure("[m, X] inside the root space", res, member_tol)
    return frame


def perp_space(L: LieAlgebra, C: CartanData, datum: RootDatum, index: int, X) -> Frame:
    """``beta_sigma``-orthogonal complement of ``X`` inside ``g_lam``."""
    space = datum.spaces[index]
    X = np.asarray(X, dtype=float)
    nx = C.norm(X)
    if nx == 0.0:
        raise ZeroVector("the orthogonal complement needs X != 0")
    unit = Frame(X / nx, C.gram)
    rest = [numkit.project(unit, v)[1] for v in space.vectors]
    return numkit.orthonormalize(rest, C.gram, 1e-6)


@dataclass
class ReconstructionWitness:
    root: np.ndarray
    X: np.ndarray
    Xprime: np.ndarray
    Xpp: np.ndarray
    Z: np.ndarray
    M: np.ndarray
    residuals: dict = field(default_factory=dict)


def reconstruct(L: LieAlgebra, C: CartanData, datum: RootDatum, index: int, X, Xprime,
                tol: float = 1e-8, strict: bool = True,
                member_tol: float = DEFAULT_TOL) -> ReconstructionWitness:
    """Build ``M`` in m with ``[M, X] = X'`` by the constructive argument.

    With ``c = lam(H_lam) B(X, sigma X)``:
    ``X'' = [[X, X'], sigma X]``, ``Z = X'' / (3c) + X'``,
    ``W = [sigma X, Z]`` (an element of m) and ``M = -W / c``.

    Along the way the two intermediate identities
    ``[X, X''] = -2c [X, X']`` and ``3c X'' = [X, [sigma X, X'']]`` are
    measured. With ``strict`` any residual above ``tol`` raises
    :class:`IdentityFailure`; otherwise residuals are only recorded.
    """
    X = _require_member(C, datum, index, X, member_tol)
    Xp = _require_member(C, datum, index, Xprime, member_tol)
    nx, nxp = C.norm(X), C.norm(Xp)
    if nx == 0.0:
        raise ZeroVector("reconstruction needs X != 0")
    if abs(C.gram @ X @ Xp) >= member_tol * max(nx * nxp, 1e-300) and nxp > 0:
        raise NotPerp("X' is not beta_sigma-orthogonal to X")

    sX = C.apply(X)
    c = datum.root_value(index) * L.killing_form(X, sX)
    if abs(c) <= DIVISION_GUARD * nx**2:
        raise IdentityFailure(f"division guard tripped: |c| = {abs(c):.3e}")

    XXp = L.bracket(X, Xp)
    Xpp = L.bracket(XXp, sX)
    Z = Xpp / (3.0 * c) + Xp
    W_plus = L.bracket(Z, sX) - L.killing_form(Z, sX) * datum.coroots[index]
    W = L.bracket(sX, Z)
    M = -W / c

    denom = abs(c) * nx * nxp if nxp > 0 else 1.0
    residuals = {
        "bracket_identity": C.norm(L.bracket(X, Xpp) + 2.0 * c * XXp) / denom,
        "triple_identity": C.norm(3.0 * c * Xpp - L.bracket(X, L.bracket(sX, Xpp))) / (denom * nx),
        "z_perp": abs(L.killing_form(Z, sX)) / max(nx * C.norm(Z), 1e-300) if C.norm(Z) > 0 else 0.0,
        "w_in_m": C.norm(numkit.project(datum.m_frame, W)[1]) / (1.0 + nx * C.norm(Z)),
        "w_sign": C.norm(W + W_plus) / (1.0 + nx * C.norm(Z)),
        "roundtrip": C.norm(L.bracket(M, X) - Xp) / (nxp if nxp > 0 else 1.0),
    }
    if strict:
        bad = {k: v for k, v in residuals.items() if v > tol}
        if bad:
            raise IdentityFailure(f"reconstruction residuals exceed {tol:.1e}: {bad}")
    return ReconstructionWitness(root=datum.roots[index], X=X, Xprime=Xp, Xpp=Xpp, Z=Z, M=M,
                                 residuals=residuals)


def verify_theorem1(L: LieAlgebra, C: CartanData, datum: RootDatum, index: int,
                    trials: int = 100, tol: float = DEFAULT_TOL, seed: int = 42) -> VerificationReport:
    """Dimension, double containment and spanning of ``[m, X]`` vs ``X^perp``."""
    lam = datum.roots[index]
    mult = datum.spaces[index].dim
    dim_err = span_err = 0
    contain = ortho = 0.0
    for t in range(trials):
        rng = trial_rng(seed, _SALT["theorem1"], index, t)
        X = datum.spaces[index].random_unit(rng)
        mx = bracket_m_space(L, datum, index, X)
        perp = perp_space(L, C, datum, index, X)
        dim_err = max(dim_err, abs(mx.dim - (mult - 1)) + abs(perp.dim - (mult - 1)))
        for v in mx.vectors:
            contain = max(contain, C.norm(numkit.project(perp, v)[1]))
        for v in perp.vectors:
            contain = max(contain, C.norm(numkit.project(mx, v)[1]))
        for M in datum.m_frame.vectors:
            ortho = max(ortho, abs(C.gram @ X @ L.bracket(M, X)))
        together = np.vstack([X[None, :], mx.vectors])
        span = numkit.orthonormalize(together, C.gram, 1e-6).dim
        span_err = max(span_err, abs(span - mult))

    report = VerificationReport()
    name = L.name
    report.add("theorem1_dimension", name, lam, trials, dim_err, tol, seed, passed=dim_err == 0)
    report.add("theorem1_containment", name, lam, trials, contain, tol, seed)
    report.add("theorem1_orthogonality", name, lam, trials, ortho, tol, seed)
    report.add("theorem1_span", name, lam, trials, span_err, tol, seed, passed=span_err == 0)
    return report


def verify_reconstruction(L, C, datum, index, trials=100, tol=1e-8, seed=42) -> VerificationReport:
    """Replay the constructive argument on random orthogonal pairs (mult >= 2 only)."""
    lam = datum.roots[index]
    worst: dict[str, float] = {}
    for t in range(trials):
        rng = trial_rng(seed, _SALT["reconstruct"], index, t)
        X = datum.spaces[index].random_unit(rng)
        perp = perp_space(L, C, datum, index, X)
        Xp = perp.random_unit(rng) * rng.uniform(0.5, 2.0)
        w = reconstruct(L, C, datum, index, X, Xp, tol=tol, strict=False)
        for k, v in w.residuals.items():
            worst[k] = max(worst.get(k, 0.0), v)
    report = VerificationReport()
    report.add("reconstruct_roundtrip", L.name, lam, trials, worst["roundtrip"], tol, seed)
    report.add("reconstruct_bracket_identity", L.name, lam, trials, worst["bracket_identity"], tol, seed)
    report.add("reconstruct_triple_identity", L.name, lam, trials, worst["triple_identity"], tol, seed)
    report.add("reconstruct_m_membership", L.name, lam, trials,
               max(worst["w_in_m"], worst["w_sign"], worst["z_perp"]), tol, seed)
    return report


def verify_relations(L, C, datum, index, trials=100, tol=DEFAULT_TOL, seed=42,
                     which=("relation1", "relation1b")) -> VerificationReport:
    lam = datum.roots[index]
    space = datum.spaces[index]
    report = VerificationReport()
    if "relation1" in which:
        worst = 0.0
        for t in range(trials):
            rng = trial_rng(seed, _SALT["relation1"], index, t)
            X = space.random_unit(rng) * rng.uniform(0.1, 3.0)
            worst = max(worst, relation1_residual(L, C, datum, index, X))
        report.add("relation1", L.name, lam, trials, worst, tol, seed)
    if "relation1b" in which:
        memb = orth = 0.0
        for t in range(trials):
            rng = trial_rng(seed, _SALT["relation1b"], index, t)
            X = space.random_unit(rng)
            Y = space.random_unit(rng)
            _, a, b = _m_component(L, C, datum, index, X, Y)
            memb, orth = max(memb, a), max(orth, b)
        report.add("relation1b_membership", L.name, lam, trials, memb, tol, seed)
        report.add("relation1b_orthogonality", L.name, lam, trials, orth, tol, seed)
    return report


def corollary_checks(L: LieAlgebra, C: CartanData, datum: RootDatum, trials: int = 100,
                     tol: float = DEFAULT_TOL, seed: int = 42) -> VerificationReport:
    """``[m, X] = 0`` on multiplicity-one spaces; ``m = 0`` forces multiplicity one."""
    report = VerificationReport()
    for i, lam in enumerate(datum.roots):
        if datum.spaces[i].dim != 1:
            continue
        worst = 0.0
        dims = 0
        for t in range(trials):
            rng = trial_rng(seed, _SALT["corollaries"], i, t)
            X = datum.spaces[i].random_unit(rng)
            for M in datum.m_frame.vectors:
                worst = max(worst, C.norm(L.bracket(M, X)))
            dims = max(dims, bracket_m_space(L, datum, i, X).dim)
        report.add("corollary_mult_one", L.name, lam, trials, worst, tol, seed,
                   passed=worst < tol and dims == 0)
    if datum.m_dim == 0:
        bad = sum(m != 1 for m in datum.multiplicities)
        report.add("corollary_m_trivial", L.name, None, len(datum.roots), bad, tol, seed,
                   passed=bad == 0, applicable=True)
    else:
        report.add("corollary_m_trivial", L.name, None, 0, 0.0, tol, seed, passed=True,
                   applicable=False)
    return report


def run_suites(L, C, datum, which="all", trials=100, tol=DEFAULT_TOL, seed=42) -> VerificationReport:
    """Run the selected verification suites over every root.

    The reconstruction replay is held to ``10 * tol``.
    """
    from .rootspace import grading_check

    selected = SUITES if which == "all" else (which,)
    if any(s not in SUITES for s in selected):
        raise ValueError(f"unknown suite {which!r}")
    report = VerificationReport()
    if "grading" in selected:
        report.extend(grading_check(L, C, datum, tol, seed))
    rel = tuple(s for s in ("relation1", "relation1b") if s in selected)
    for i in range(len(datum.roots)):
        if rel:
            report.extend(verify_relations(L, C, datum, i, trials, tol, seed, rel))
        if "theorem1" in selected:
            report.extend(verify_theorem1(L, C, datum, i, trials, tol, seed))
            if datum.spaces[i].dim >= 2:
                report.extend(verify_reconstruction(L, C, datum, i, trials, 10 * tol, seed))
    if "corollaries" in selected:
        report.extend(corollary_checks(L, C, datum, trials, tol, seed))
    return report
