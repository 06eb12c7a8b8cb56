"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line to the terminal
(also without ``-s``) before asserting.
"""

import subprocess
import sys
import time

import pytest

from rootscope import catalog, radiality, rootspace, theorem
from rootscope.radiality import InvariantFunction

import oracles
from conftest import CATALOG, setup

TRIALS = 100
SEED = 42

EXPECTED = {
    "sl 2": ([1, 1], 0),
    "sl 3": ([1] * 6, 0),
    "su 2 1": ([1, 1, 2, 2], 1),
    "so 1 4": ([3, 3], 3),
    "so 2 3": ([1] * 8, 0),
    "sp 4": ([1] * 8, 0),
}


@pytest.fixture
def verdict(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return emit


def root_sweep(check):
    """Apply ``check(L, C, datum, i)`` to every root of every catalog algebra."""
    report = None
    for spec in CATALOG:
        L, C, datum = setup(spec)
        for i in range(len(datum.roots)):
            sub = check(L, C, datum, i)
            if report is None:
                report = sub
            else:
                report.extend(sub)
    return report


def worst(report, *names):
    return max(e.max_residual for e in report.entries if e.check in names)


def test_criterion_1_root_data_vs_oracle(verdict):
    start = time.perf_counter()
    mismatches = []
    for spec in CATALOG:
        family, *params = spec.split()
        parsed = catalog.parse_spec(spec)
        basis, _ = catalog.realization(parsed)
        oracle = oracles.root_table(basis, oracles.hand_abelian(family, [int(p) for p in params]))
        L, C = catalog.build(parsed)
        datum = rootspace.decompose(L, C, seed=SEED)
        got = (sorted(datum.multiplicities), datum.m_dim)
        if got != oracle or (spec in EXPECTED and got != EXPECTED[spec]):
            mismatches.append((spec, got, oracle))
    elapsed = time.perf_counter() - start
    verdict(1, not mismatches and elapsed < 10.0,
            f"{len(CATALOG)} algebras, mismatches={mismatches}, {elapsed:.2f}s")


def test_criterion_2_relation1(verdict):
    report = root_sweep(lambda L, C, d, i: theorem.verify_relations(L, C, d, i, TRIALS, 1e-9, SEED, ("relation1",)))
    w = worst(report, "relation1")
    verdict(2, report.passed and w < 1e-9 and all(e.trials == TRIALS for e in report.entries),
            f"max residual {w:.2e} over {len(report.entries)} root spaces")


def test_criterion_3_relation1b(verdict):
    report = root_sweep(lambda L, C, d, i: theorem.verify_relations(L, C, d, i, TRIALS, 1e-9, SEED, ("relation1b",)))
    m = worst(report, "relation1b_membership")
    o = worst(report, "relation1b_orthogonality")
    verdict(3, report.passed and m < 1e-9 and o < 1e-9,
            f"membership {m:.2e}, orthogonality {o:.2e}")


def test_criterion_4_splitting(verdict):
    report = root_sweep(lambda L, C, d, i: theorem.verify_theorem1(L, C, d, i, TRIALS, 1e-9, SEED))
    dims = worst(report, "theorem1_dimension", "theorem1_span")
    contain = worst(report, "theorem1_containment")
    mult_one = None
    for spec in CATALOG:
        L, C, datum = setup(spec)
        sub = theorem.corollary_checks(L, C, datum, TRIALS, 1e-9, SEED)
        entries = sub.by_check("corollary_mult_one")
        mult_one = max([mult_one or 0.0] + [e.max_residual for e in entries])
        if not all(e.passed for e in entries):
            mult_one = float("inf")
    ok = report.passed and dims == 0 and contain < 1e-9 and mult_one < 1e-9
    verdict(4, ok, f"dimension defect {dims}, containment {contain:.2e}, [m,X] on mult-1 spaces {mult_one:.2e}")


def test_criterion_5_reconstruction(verdict):
    covered = []
    report = None
    for spec in CATALOG:
        L, C, datum = setup(spec)
        for i in range(len(datum.roots)):
            if datum.spaces[i].dim < 2:
                continue
            covered.append((spec, datum.spaces[i].dim))
            sub = theorem.verify_reconstruction(L, C, datum, i, TRIALS, 1e-8, SEED)
            report = sub if report is None else (report.extend(sub) or report)
    rt = worst(report, "reconstruct_roundtrip")
    ident = worst(report, "reconstruct_bracket_identity", "reconstruct_triple_identity")
    memb = worst(report, "reconstruct_m_membership")
    specs = {s for s, _ in covered}
    ok = report.passed and {"su 2 1", "so 1 4"} <= specs and rt <= 1e-8 and ident < 1e-8
    verdict(5, ok, f"{len(covered)} spaces, roundtrip {rt:.2e}, identities {ident:.2e}, m-membership {memb:.2e}")


def test_criterion_6_trivial_m_forces_mult_one(verdict):
    bad = []
    checked = 0
    for spec in CATALOG:
        L, C, datum = setup(spec)
        entry = theorem.corollary_checks(L, C, datum, 1, 1e-9, SEED).by_check("corollary_m_trivial")[0]
        if datum.m_dim == 0:
            checked += 1
            if not entry.passed or any(m != 1 for m in datum.multiplicities):
                bad.append(spec)
    verdict(6, checked >= 5 and not bad, f"{checked} algebras with m = 0, violations {bad}")


def test_criterion_7_radiality(verdict):
    deltas, fundamentals, controls = [], [], []
    for spec in ("so 1 4", "su 2 1"):
        L, C, datum = setup(spec)
        indices = radiality.eligible_roots(datum)
        assert indices
        for kind in ("trace_p", "trace_p2"):
            F = InvariantFunction(kind)
            for i in indices:
                r = radiality.radiality_check(L, C, datum, F, i, TRIALS, 1e-8, SEED)
                deltas.append(r.by_check("radiality_delta")[0].max_residual)
            fundamentals.append(radiality.fundamental_check(L, C, datum, F, 50, 1e-6, SEED).entries[0].max_residual)
        for i in indices:
            controls.append(radiality.negative_control(L, C, datum, i, TRIALS, SEED).entries[0].max_residual)
    ok = max(deltas) < 1e-8 and max(fundamentals) < 1e-6 and min(controls) > 1e-3
    verdict(7, ok, f"max delta {max(deltas):.2e}, |X*F| {max(fundamentals):.2e}, "
                   f"probe delta min {min(controls):.2e} (must exceed 1e-3)")


def test_criterion_8_grading_and_symmetry(verdict):
    failures = []
    resid = 0.0
    for spec in CATALOG:
        L, C, datum = setup(spec)
        report = rootspace.grading_check(L, C, datum, 1e-9, SEED)
        failures += [(spec, e.check) for e in report.failures()]
        resid = max(resid, worst(report, "grading", "sigma_symmetry"))
        triples = report.by_check("no_triple_root")[0]
        if triples.max_residual != 0:
            failures.append((spec, "no_triple_root"))
    verdict(8, not failures and resid < 1e-9, f"max residual {resid:.2e}, failures {failures}")


def test_criterion_9_determinism(verdict):
    cmd = [sys.executable, "-m", "rootscope", "suite", "--seed", "42"]
    outputs, times = [], []
    for _ in range(2):
        start = time.perf_counter()
        proc = subprocess.run(cmd, capture_output=True, check=False)
        times.append(time.perf_counter() - start)
        outputs.append((proc.returncode, proc.stdout))
    same = outputs[0] == outputs[1]
    ok = same and outputs[0][0] == 0 and max(times) < 60.0
    verdict(9, ok, f"byte-identical={same}, exit={outputs[0][0]}, "
                   f"{len(outputs[0][1])} bytes, wall {max(times):.1f}s")
