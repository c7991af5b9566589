"""Suite reports and the deterministic work splitter."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from ..core import Tournament, format_tk

VIOLATION_CAP = 100


@dataclass
class Violation:
    instance: str
    expected: str
    observed: str

    def to_dict(self) -> dict:
        return {"instance": self.instance, "expected": self.expected, "observed": self.observed}


def violation(t: Tournament | str, expected, observed) -> Violation:
    inst = t if isinstance(t, str) else format_tk(t)
    return Violation(inst, str(expected), str(observed))


@dataclass
class Report:
    suite: str
    params: dict
    instances_checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    runtime_ms: int | None = None
    deterministic: bool = True

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "instances_checked": self.instances_checked,
            "violations": [v.to_dict() for v in self.violations[:VIOLATION_CAP]],
            "runtime_ms": self.runtime_ms,
            "deterministic": self.deterministic,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        lines = [f"{self.suite}: {status} ({self.instances_checked} instances) {params}".rstrip()]
        if self.runtime_ms is not None:
            lines.append(f"runtime_ms: {self.runtime_ms}")
        for v in self.violations[:VIOLATION_CAP]:
            lines.append(f"  {v.instance}: expected {v.expected}, observed {v.observed}")
        if len(self.violations) > VIOLATION_CAP:
            lines.append(f"  ... {len(self.violations) - VIOLATION_CAP} more")
        return "\n".join(lines) + "\n"


def job_count(jobs: int | None = None) -> int:
    if jobs is None:
        try:
            jobs = int(os.environ.get("TK_JOBS", "1") or 1)
        except ValueError:
            jobs = 1
    return max(1, jobs)


def _run_chunk(args):
    fn, items = args
    checked = 0
    found = []
    for item in items:
        c, v = fn(item)
        checked += c
        found.extend(v)
    return checked, found


def map_checks(fn: Callable, items: Sequence, jobs: int | None = None) -> tuple[int, list[Violation]]:
    """Apply ``fn(item) -> (checked, violations)`` to every item.

    Items are split into contiguous chunks and the results concatenated in
    item order, so the outcome does not depend on the worker count.
    """
    jobs = job_count(jobs)
    items = list(items)
    if jobs == 1 or len(items) < 2 * jobs:
        return _run_chunk((fn, items))
    size = -(-len(items) // (jobs * 4))
    chunks = [(fn, items[i:i + size]) for i in range(0, len(items), size)]
    checked = 0
    found: list[Violation] = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for c, v in pool.map(_run_chunk, chunks):
            checked += c
            found.extend(v)
    return checked, found
