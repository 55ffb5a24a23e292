"""Structured pass/fail reports for law checks and verification sweeps.

A failed check is data, not an exception: it carries a counterexample that a
caller (or the command line) can print, serialize, or assert on.
"""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    counterexample: object = None
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out: dict = {"name": self.name, "passed": self.passed}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.stats:
            out["stats"] = {k: self.stats[k] for k in sorted(self.stats)}
        return out


@dataclass(frozen=True)
class Report:
    title: str
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        'Look up one check by name.'
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }
