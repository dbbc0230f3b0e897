"""Structured pass/fail records for closed-form vs oracle comparisons."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

__all__ = ["CheckResult", "VerificationReport"]


@dataclass
class CheckResult:
    """Outcome of a single named check.

    ``paper_ref`` carries the formula the check exercises, spelled out in
    plain text so reports are self-describing.
    """

    name: str
    paper_ref: str
    max_err: float
    tol: float
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "paper_ref": self.paper_ref,
            "max_err": self.max_err,
            "tol": self.tol,
            "pass": self.passed,
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerificationReport:
    """A batch of checks plus the configuration that produced them."""

    version: str
    config: dict
    seed: int | None = None
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "config": self.config,
            "seed": self.seed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"
