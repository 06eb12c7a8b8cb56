import json

import pytest

from rootscope import cli
from rootscope.report import CheckResult


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(scope="module")
def suite_default():
    labels, report = cli.suite_report(cli.RunConfig(None))
    return labels, report


def test_roots_sl3(capsys):
    code, out, _ = run(capsys, "roots", "sl", "3")
    assert code == 0
    d = json.loads(out)
    assert d["algebra"] == "sl(3,R)" and d["dim"] == 8 and d["rank"] == 2
    assert len(d["roots"]) == 6 and d["multiplicities"] == [1] * 6 and d["m_dim"] == 0
    assert d["seed"] == 42 and d["tol"] == 1e-9


def test_roots_su21(capsys):
    code, out, _ = run(capsys, "roots", "su", "2", "1")
    d = json.loads(out)
    assert code == 0
    assert sorted(d["multiplicities"]) == [1, 1, 2, 2] and d["m_dim"] == 1


@pytest.mark.parametrize("argv", [
    ["roots", "sl", "1"],
    ["roots", "xx", "2"],
    ["verify", "all"],
    ["verify", "--spec", "sl 2", "sl", "2"],
    ["radiality", "sl", "3"],
    ["radiality", "sl", "3", "2?"],
    ["roots", "sl", "3", "--tol", "-1"],
    ["verify", "--spec", "sl 2", "--trials", "0"],
])
def test_input_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err and out == ""


def test_env_tol_not_a_number(capsys, monkeypatch):
    monkeypatch.setenv("ROOTSCOPE_TOL", "tiny")
    assert run(capsys, "roots", "sl", "2")[0] == 2


def test_verify_so14(capsys):
    code, out, _ = run(capsys, "verify", "all", "--spec", "so 1 4", "--trials", "20")
    d = json.loads(out)
    assert code == 0 and d["pass"] and d["algebra"] == "so(1,4)"
    assert list(d)[:6] == ["algebra", "suite", "seed", "tol", "trials", "pass"]


def test_verify_absurd_tolerance_fails(capsys):
    code, out, _ = run(capsys, "verify", "all", "--spec", "so 1 4", "--trials", "5", "--tol", "1e-18")
    assert code == 1 and not json.loads(out)["pass"]


def test_env_tolerance(capsys, monkeypatch):
    monkeypatch.setenv("ROOTSCOPE_TOL", "1e-18")
    code, out, _ = run(capsys, "verify", "relation1", "sl", "3", "--trials", "5")
    assert code == 1 and json.loads(out)["tol"] == 1e-18
    # an explicit flag wins over the environment
    code, out, _ = run(capsys, "verify", "relation1", "sl", "3", "--trials", "5", "--tol", "1e-9")
    assert code == 0


def test_verify_theorem1_per_root(capsys):
    code, out, _ = run(capsys, "verify", "theorem1", "--spec", "su 2 1", "--trials", "200")
    d = json.loads(out)
    assert code == 0 and d["suite"] == "theorem1" and d["trials"] == 200
    dims = [e for e in d["entries"] if e["check"] == "theorem1_dimension"]
    assert len(dims) == 4
    assert len({tuple(e["root"]) for e in dims}) == 4
    assert all(e["trials"] == 200 for e in dims)


@pytest.mark.parametrize("argv", [
    ["radiality", "so", "1", "4", "--fn", "trace_p"],
    ["radiality", "su", "2", "1", "--fn", "trace_p2"],
    ["radiality", "--spec", "su 2 1", "--fn", "trace_p_inv"],
])
def test_radiality_passes(capsys, argv):
    code, out, _ = run(capsys, *argv, "--trials", "30")
    assert code == 0 and json.loads(out)["pass"]


def test_radiality_probe_fails(capsys):
    code, out, _ = run(capsys, "radiality", "so", "1", "4", "--fn", "probe_entry_sum", "--trials", "20")
    assert code == 1


def test_json_output_file(capsys, tmp_path):
    path = tmp_path / "roots.json"
    code, out, _ = run(capsys, "roots", "sp", "4", "--json", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["algebra"] == "sp(4,R)"


def test_text_format(capsys):
    code, out, _ = run(capsys, "roots", "su", "2", "1", "--format", "text")
    assert code == 0 and out.startswith("su(2,1)") and "mult 2" in out
    code, out, _ = run(capsys, "verify", "grading", "sl", "2", "--format", "text")
    assert code == 0 and "PASS" in out


def test_byte_identical_output(capsys):
    argv = ["verify", "all", "--spec", "su 2 1", "--trials", "10", "--seed", "3"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second


def test_report_json_round_trip(capsys):
    _, out, _ = run(capsys, "verify", "all", "--spec", "su 2 1", "--trials", "5")
    d = json.loads(out)
    for entry in d["entries"]:
        assert CheckResult.from_dict(entry).to_dict() == entry
    assert json.loads(json.dumps(d, indent=2)) == d


def test_roots_json_round_trip(capsys):
    _, out, _ = run(capsys, "roots", "so", "2", "3")
    assert json.dumps(json.loads(out), indent=2) == out.rstrip("\n")


def test_run_config_validation():
    with pytest.raises(cli.InputError):
        cli.RunConfig(None, tol=0.0)
    with pytest.raises(cli.InputError):
        cli.RunConfig(None, seed=-1)


def test_suite_covers_catalog(suite_default):
    labels, report = suite_default
    assert len(labels) >= 7
    assert report.passed, report.to_text()
    expected = {
        "completeness", "eigen_residual", "grading", "sigma_symmetry", "coroot", "no_triple_root",
        "relation1", "relation1b_membership", "relation1b_orthogonality",
        "theorem1_dimension", "theorem1_containment", "theorem1_orthogonality", "theorem1_span",
        "reconstruct_roundtrip", "reconstruct_bracket_identity", "reconstruct_triple_identity",
        "reconstruct_m_membership", "corollary_mult_one", "corollary_m_trivial",
        "radiality_delta", "radiality_tangential", "k_invariance", "fundamental_derivative",
        "negative_control",
    }
    assert expected <= set(report.checks())


def test_suite_other_seed_same_verdicts(suite_default):
    _, base = suite_default
    _, other = cli.suite_report(cli.RunConfig(None, seed=7))
    assert [(e.check, e.algebra, e.passed) for e in base.entries] == \
           [(e.check, e.algebra, e.passed) for e in other.entries]
    assert any(a.max_residual != b.max_residual for a, b in zip(base.entries, other.entries))
