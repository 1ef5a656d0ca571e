"""Verification reports: ordered check results with JSON export."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckResult:
    check: str
    instance: str
    passed: bool
    detail: str | None = None
    truncation_order: int | None = None

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


@dataclass
class Report:
    """Results in deterministic instance order.

    ``kind`` selects the record layout: "klr" records use the keys
    relation_family/instance/status/counterexample, "duality" records use
    check/instance/truncation_order/status/witness.
    """

    title: str
    kind: str = "klr"
    results: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add(self, check, instance, passed, detail=None, truncation_order=None):
        self.results.append(CheckResult(check, instance, bool(passed), detail, truncation_order))

    def extend(self, other: "Report"):
        self.results.extend(other.results)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list:
        return [r for r in self.results if not r.passed]

    def counts_by_check(self) -> dict:
        out = {}
        for r in self.results:
            p, f = out.get(r.check, (0, 0))
            out[r.check] = (p + r.passed, f + (not r.passed))
        return out

    def _record(self, r: CheckResult) -> dict:
        if self.kind == "klr":
            rec = {"relation_family": r.check, "instance": r.instance, "status": r.status}
            if not r.passed and r.detail is not None:
                rec["counterexample"] = r.detail
        else:
            rec = {
                "check": r.check,
                "instance": r.instance,
                "truncation_order": r.truncation_order,
                "status": r.status,
            }
            if not r.passed and r.detail is not None:
                rec["witness"] = r.detail
        return rec

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            **self.meta,
            "passed": sum(r.passed for r in self.results),
            "failed": len(self.failures),
            "ok": self.ok,
            "results": [self._record(r) for r in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False) + "\n"

    def summary(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.ok else 'FAIL'} "
                 f"({len(self.results) - len(self.failures)}/{len(self.results)} checks)"]
        for name, (p, f) in self.counts_by_check().items():
            lines.append(f"  {name}: {p} passed, {f} failed")
        for r in self.failures[:10]:
            lines.append(f"  FAILED {r.check} [{r.instance}]: {r.detail}")
        return "\n".join(lines) + "\n"
