"""Report values returned by the checking operations.

A report never raises: it lists every failing tuple so the caller can decide.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

MAX_SHOWN = 8


@dataclass
class Check:
    name: str
    passed: bool
    failures: list = field(default_factory=list)
    detail: dict = field(default_factory=dict)
    group: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed,
                "failures": [_jsonable(f) for f in self.failures],
                "detail": _jsonable(self.detail)}


@dataclass
class Report:
    subject: str
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, failures=(), *, detail: dict | None = None, group: str = "",
            passed: bool | None = None) -> Check:
        failures = list(failures)
        c = Check(name, (not failures) if passed is None else passed, failures, detail or {}, group)
        self.checks.append(c)
        return c

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def tally(self, group: str | None = None) -> tuple[int, int]:
        cs = [c for c in self.checks if group is None or c.group == group]
        return sum(c.passed for c in cs), len(cs)

    def to_json(self) -> dict:
        return {"subject": self.subject, "ok": self.ok,
                "checks": [c.to_json() for c in self.checks], "data": _jsonable(self.data)}

    def render(self) -> str:
        good, total = self.tally()
        lines = [f"{self.subject}: {'PASS' if self.ok else 'FAIL'} ({good}/{total})"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            line = f"  [{mark}] {c.name}"
            if c.failures:
                shown = ", ".join(str(f) for f in c.failures[:MAX_SHOWN])
                more = f" (+{len(c.failures) - MAX_SHOWN} more)" if len(c.failures) > MAX_SHOWN else ""
                line += f": {shown}{more}"
            lines.append(line)
        return "\n".join(lines)

    def __str__(self):
        return self.render()


def _jsonable(x: Any):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    try:
        return int(x)
    except (TypeError, ValueError):
        return str(x)
