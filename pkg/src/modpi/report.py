"""Pass/fail records shared by every verification routine."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class CheckReport:
    name: str
    status: str
    detail: str
    elapsed_ms: int = 0

    def __post_init__(self):
        if self.status not in ("PASS", "FAIL"):
            raise ValueError(f"status must be PASS or FAIL, got {self.status!r}")
        if self.status == "FAIL" and not self.detail:
            raise ValueError("a failing check needs a detail message")

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def __bool__(self):
        return self.passed

    def line(self) -> str:
        return f"CHECK {self.name} {self.status} {self.detail}".rstrip()

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def make_report(name: str, ok: bool, detail: str, elapsed_ms: int = 0) -> CheckReport:
    return CheckReport(name, "PASS" if ok else "FAIL", detail, elapsed_ms)


@contextmanager
def stopwatch():
    """Yields a callable returning elapsed milliseconds."""
    start = time.perf_counter()
    yield lambda: int((time.perf_counter() - start) * 1000)
