"""Command line front end.

::

    rootscope roots su 2 1
    rootscope verify theorem1 --spec "su 2 1" --trials 200
    rootscope radiality so 1 4 --fn trace_p
    rootscope suite --seed 7 --json summary.json

Exit codes: 0 when every check passes, 1 on a verification failure,
2 on bad input.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from . import catalog, radiality, rootspace, theorem
from .catalog import AlgebraSpec
from .errors import InvalidParams, MultiplicityTooSmall, RootscopeError
from .report import VerificationReport, dumps

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
DEFAULT_TOL = 1e-9
DEFAULT_SEED = 42
DEFAULT_TRIALS = 100
SUITE_KINDS = radiality.KINDS


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    spec: AlgebraSpec | None
    tol: float = DEFAULT_TOL
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    output: str | None = None
    format: str = "json"

    def __post_init__(self):
        if not self.tol > 0:
            raise InputError(f"tol must be positive, got {self.tol}")
        if self.trials < 1:
            raise InputError(f"trials must be at least 1, got {self.trials}")
        if self.seed < 0:
            raise InputError(f"seed must be non-negative, got {self.seed}")


def _emit(config: RunConfig, payload: dict, report: VerificationReport | None = None):
    if config.format == "text":
        if report is not None:
            head = f"{payload.get('algebra', 'suite')}: {'PASS' if payload['pass'] else 'FAIL'}"
            text = head + "\n" + report.to_text()
        else:
            text = _roots_text(payload)
    else:
        text = dumps(payload)
    if config.output:
        with open(config.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _roots_text(d: dict) -> str:
    lines = [f"{d['algebra']}  dim={d['dim']}  rank={d['rank']}  dim m={d['m_dim']}"]
    for root, mult in zip(d["roots"], d["multiplicities"]):
        lines.append("  (" + ", ".join(f"{v:+.6f}" for v in root) + f")  mult {mult}")
    return "\n".join(lines)


def cmd_roots(config: RunConfig) -> int:
    L, C = catalog.build(config.spec)
    datum = rootspace.decompose(L, C, config.tol, config.seed)
    _emit(config, datum.to_dict(config.spec.label, L.dim))
    return EXIT_OK


def verify_report(config: RunConfig, which: str = "all") -> VerificationReport:
    L, C = catalog.build(config.spec)
    datum = rootspace.decompose(L, C, rootspace.DEFAULT_TOL, config.seed)
    return theorem.run_suites(L, C, datum, which, config.trials, config.tol, config.seed)


def cmd_verify(config: RunConfig, which: str = "all") -> int:
    report = verify_report(config, which)
    payload = {
        "algebra": config.spec.label,
        "suite": which,
        "seed": config.seed,
        "tol": config.tol,
        "trials": config.trials,
        "pass": report.passed,
        "entries": report.to_list(),
    }
    _emit(config, payload, report)
    return EXIT_OK if report.passed else EXIT_FAIL


def radiality_report(config: RunConfig, kinds) -> VerificationReport:
    L, C = catalog.build(config.spec)
    datum = rootspace.decompose(L, C, rootspace.DEFAULT_TOL, config.seed)
    if not radiality.eligible_roots(datum):
        raise InputError(f"{config.spec.label} has no root of multiplicity >= 2")
    report = VerificationReport()
    invariant = [k for k in kinds if k in radiality.KINDS]
    if invariant:
        report.extend(radiality.run_radiality(L, C, datum, invariant, config.trials,
                                              config.tol, config.seed))
    if radiality.PROBE in kinds:
        for i in radiality.eligible_roots(datum):
            report.extend(radiality.radiality_check(L, C, datum, radiality.InvariantFunction(radiality.PROBE),
                                                    i, config.trials, config.tol, config.seed))
    return report


def cmd_radiality(config: RunConfig, function_kind: str = "trace_p") -> int:
    report = radiality_report(config, (function_kind,))
    payload = {
        "algebra": config.spec.label,
        "function_kind": function_kind,
        "seed": config.seed,
        "tol": config.tol,
        "trials": config.trials,
        "pass": report.passed,
        "entries": report.to_list(),
    }
    _emit(config, payload, report)
    return EXIT_OK if report.passed else EXIT_FAIL


def suite_report(config: RunConfig) -> tuple[list[str], VerificationReport]:
    report = VerificationReport()
    labels = []
    for spec in catalog.list_catalog():
        sub = RunConfig(spec, config.tol, config.seed, config.trials)
        labels.append(spec.label)
        report.extend(verify_report(sub, "all"))
        try:
            report.extend(radiality_report(sub, SUITE_KINDS))
        except InputError:
            pass  # no root of multiplicity >= 2
    return labels, report


def cmd_suite(config: RunConfig) -> int:
    labels, report = suite_report(config)
    payload = {
        "seed": config.seed,
        "tol": config.tol,
        "trials": config.trials,
        "algebras": labels,
        "checks": report.checks(),
        "pass": report.passed,
        "failures": len(report.failures()),
        "entries": report.to_list(),
    }
    _emit(config, payload, report)
    return EXIT_OK if report.passed else EXIT_FAIL


def _default_tol() -> float:
    env = os.environ.get("ROOTSCOPE_TOL")
    if env is None:
        return DEFAULT_TOL
    try:
        return float(env)
    except ValueError as exc:
        raise InputError(f"ROOTSCOPE_TOL is not a number: {env!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="pass/fail tolerance (default 1e-9 or $ROOTSCOPE_TOL)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    common.add_argument("--json", dest="output", metavar="PATH", default=None, help="write output to PATH")
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="rootscope", description="Restricted root spaces of classical real forms.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", parents=[common], help="print the restricted root datum")
    p.add_argument("algebra", nargs="+", help="family and parameters, e.g. su 2 1")

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("args", nargs="*", help="[all|relation1|relation1b|theorem1|corollaries|grading] [family params...]")
    p.add_argument("--spec", default=None, help='algebra, e.g. "so 1 4"')

    p = sub.add_parser("radiality", parents=[common], help="check radiality of invariant functions")
    p.add_argument("algebra", nargs="*")
    p.add_argument("--spec", default=None)
    p.add_argument("--fn", default="trace_p", choices=radiality.KINDS + (radiality.PROBE,))

    sub.add_parser("suite", parents=[common], help="run everything over the whole catalog")
    return parser


def _spec_from(tokens, spec_opt) -> AlgebraSpec:
    if spec_opt and tokens:
        raise InputError("give the algebra either positionally or with --spec, not both")
    text = spec_opt if spec_opt else tokens
    if not text:
        raise InputError("no algebra given")
    return catalog.parse_spec(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol = args.tol if args.tol is not None else _default_tol()
        which = "all"
        spec = None
        if args.command == "roots":
            spec = _spec_from(args.algebra, None)
        elif args.command == "verify":
            tokens = list(args.args)
            if tokens and tokens[0] in ("all",) + theorem.SUITES:
                which = tokens.pop(0)
            spec = _spec_from(tokens, args.spec)
        elif args.command == "radiality":
            spec = _spec_from(args.algebra, args.spec)
        config = RunConfig(spec, tol, args.seed, args.trials, args.output, args.format)

        if args.command == "roots":
            return cmd_roots(config)
        if args.command == "verify":
            return cmd_verify(config, which)
        if args.command == "radiality":
            return cmd_radiality(config, args.fn)
        return cmd_suite(config)
    except (InputError, InvalidParams, MultiplicityTooSmall) as exc:
        print(f"rootscope: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RootscopeError as exc:
        print(f"rootscope: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
