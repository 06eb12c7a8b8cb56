"""Verification reports and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np


def trial_rng(seed: int, *keys: int) -> np.random.Generator:
    """Generator derived from ``(seed, *keys)``; independent of call order."""
    return np.random.default_rng([int(seed), *map(int, keys)])


@dataclass
class CheckResult:
    check: str
    algebra: str
    root: list[float] | None
    trials: int
    max_residual: float
    tol: float
    passed: bool
    seed: int
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "check": self.check,
            "algebra": self.algebra,
            "root": None if self.root is None else [float(v) for v in self.root],
            "trials": int(self.trials),
            "max_residual": float(self.max_residual),
            "tol": float(self.tol),
            "pass": bool(self.passed),
            "seed": int(self.seed),
        }
        d.update(self.extra)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CheckResult":
        base = ("check", "algebra", "root", "trials", "max_residual", "tol", "pass", "seed")
        extra = {k: v for k, v in d.items() if k not in base}
        return cls(d["check"], d["algebra"], d["root"], d["trials"], d["max_residual"],
                   d["tol"], d["pass"], d["seed"], extra)


class VerificationReport:
    """Ordered collection of :class:`CheckResult` entries."""

    def __init__(self, entries=None):
        self.entries: list[CheckResult] = list(entries or [])

    def add(self, check, algebra, root, trials, max_residual, tol, seed, passed=None, **extra):
        max_residual = float(max_residual)
        if passed is None:
            passed = max_residual < tol
        entry = CheckResult(check, algebra, None if root is None else [float(v) for v in root],
                            int(trials), max_residual, float(tol), bool(passed), int(seed), extra)
        self.entries.append(entry)
        return entry

    def extend(self, other: "VerificationReport"):
        self.entries.extend(other.entries)
        return self

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list[CheckResult]:
        return [e for e in self.entries if not e.passed]

    def checks(self) -> list[str]:
        seen = []
        for e in self.entries:
            if e.check not in seen:
                seen.append(e.check)
        return seen

    def by_check(self, name: str) -> list[CheckResult]:
        return [e for e in self.entries if e.check == name]

    def to_list(self) -> list[dict]:
        return [e.to_dict() for e in self.entries]

    def to_text(self) -> str:
        lines = []
        for e in self.entries:
            root = "-" if e.root is None else "(" + ", ".join(f"{v:.4g}" for v in e.root) + ")"
            lines.append(f"{'PASS' if e.passed else 'FAIL'}  {e.check:<28} {e.algebra:<9} root={root:<22} "
                         f"max_residual={e.max_residual:.3e} tol={e.tol:.1e} trials={e.trials}")
        return "\n".join(lines)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def dumps(obj) -> str:
    """Canonical JSON: fixed key order as built, shortest round-trip floats."""
    return json.dumps(obj, indent=2, allow_nan=True)
