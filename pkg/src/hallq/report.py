"""Verification reports: per-check counts and the first few failures."""
from __future__ import annotations

from .errors import VerificationFailure

MAX_FAILURES = 5


class Report:
    def __init__(self, suite: str, **context):
        self.suite = suite
        self.context = dict(context)
        self.checks: dict = {}

    def record(self, name: str, ok: bool, detail=None) -> bool:
        entry = self.checks.setdefault(name, {"checked": 0, "failed": 0, "examples": []})
        entry["checked"] += 1
        if not ok:
            entry["failed"] += 1
            if len(entry["examples"]) < MAX_FAILURES:
                entry["examples"].append(str(detail))
        return ok

    def merge(self, other: "Report", prefix: str = "") -> None:
        for name, e in other.checks.items():
            mine = self.checks.setdefault(prefix + name, {"checked": 0, "failed": 0, "examples": []})
            mine["checked"] += e["checked"]
            mine["failed"] += e["failed"]
            mine["examples"].extend(e["examples"][:MAX_FAILURES - len(mine["examples"])])

    @property
    def ok(self) -> bool:
        return all(e["failed"] == 0 for e in self.checks.values())

    @property
    def total(self) -> int:
        return sum(e["checked"] for e in self.checks.values())

    def failures(self) -> dict:
        return {k: e for k, e in self.checks.items() if e["failed"]}

    def raise_if_failed(self, exc=VerificationFailure):
        if not self.ok:
            name, e = next(iter(self.failures().items()))
            raise exc(f"{self.suite}: {name} failed {e['failed']}/{e['checked']}: "
                      f"{e['examples'][0] if e['examples'] else ''}")
        return self

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "suite": self.suite,
            "context": {k: self.context[k] for k in sorted(self.context)},
            "ok": self.ok,
            "checks": {k: self.checks[k] for k in sorted(self.checks)},
        }

    def summary(self) -> str:
        lines = [f"{self.suite}: {'ok' if self.ok else 'FAILED'} ({self.total} checks)"]
        for k in sorted(self.checks):
            e = self.checks[k]
            lines.append(f"  {k}: {e['checked'] - e['failed']}/{e['checked']}")
        return "\n".join(lines)
