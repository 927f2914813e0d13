"""Verification reports and their persistence."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

from . import __version__
from .algebra import LaurentPoly, RationalFunction
from .render import dumps

SCHEMA_VERSION = 1


def to_jsonable(value: Any) -> Any:
    """Exact values as JSON: series become [exponent, numerator, denominator] triples."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else [value.numerator, value.denominator]
    if isinstance(value, LaurentPoly):
        return value.to_table()
    if isinstance(value, RationalFunction):
        return {"numerator": value.numerator.to_table(), "denominator": value.denominator.to_table()}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    return str(value)


@dataclass
class CheckResult:
    name: str
    ref: str
    expected: Any
    got: Any
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "ref": self.ref,
            "expected": to_jsonable(self.expected),
            "got": to_jsonable(self.got),
            "pass": bool(self.passed),
        }


@dataclass
class Report:
    config: Dict[str, Any]
    results: List[CheckResult] = field(default_factory=list)
    objects: Dict[str, Any] = field(default_factory=dict)
    timings: Dict[str, int] = field(default_factory=dict)
    tool_version: str = __version__
    schema_version: int = SCHEMA_VERSION

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def check(self, name: str, ref: str, expected: Any, got: Any, passed: Optional[bool] = None) -> bool:
        ok = (expected == got) if passed is None else bool(passed)
        self.results.append(CheckResult(name, ref, expected, got, ok))
        return ok

    @contextmanager
    def timed(self, label: str):
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings[label] = int((time.perf_counter() - start) * 1000)

    def to_dict(self, include_timings: bool = True) -> Dict[str, Any]:
        payload = {
            "tool_version": self.tool_version,
            "schema_version": self.schema_version,
            "config": to_jsonable(self.config),
            "results": [r.to_dict() for r in self.results],
            "objects": to_jsonable(self.objects),
        }
        if include_timings:
            payload["timings"] = dict(self.timings)
        return payload

    def to_json(self, include_timings: bool = True) -> str:
        return dumps(self.to_dict(include_timings))

    def save(self, path: Path):
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_text(self.to_json() + "\n")
        tmp.replace(path)
