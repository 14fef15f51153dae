from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, GAP, SKIPPED = "pass", "fail", "gap", "skipped"


@dataclass
class Check:
    name: str
    status: str
    counterexample: Any = None
    detail: str = ""

    def to_json(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "status": self.status}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    """Outcome of a bounded verification.

    ``ok`` means no check failed; coverage gaps make the report inconclusive
    rather than failed.
    """
    checks: list[Check] = field(default_factory=list)
    bounds: dict[str, Any] = field(default_factory=dict)
    extra: dict[str, Any] = field(default_factory=dict)

    def add(self, name: str, status: str, counterexample=None, detail: str = "") -> Check:
        c = Check(name, status, counterexample, detail)
        self.checks.append(c)
        return c

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def gaps(self) -> list[Check]:
        return [c for c in self.checks if c.status == GAP]

    @property
    def ok(self) -> bool:
        return not self.failed

    @property
    def status(self) -> str:
        if self.failed:
            return FAIL
        if self.gaps:
            return GAP
        return PASS

    def to_json(self) -> dict:
        out = {"status": self.status, "bounds": self.bounds,
               "checks": [c.to_json() for c in self.checks]}
        out.update(self.extra)
        return out

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            line = f"[{c.status:>7}] {c.name}"
            if c.detail:
                line += f": {c.detail}"
            if c.counterexample is not None:
                line += f"\n          counterexample: {c.counterexample}"
            lines.append(line)
        lines.append(f"overall: {self.status} (bounds: {self.bounds})")
        return "\n".join(lines)
