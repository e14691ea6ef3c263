"""Pass/fail records for theorem checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

PASS = "pass"
FAIL = "fail"
INAPPLICABLE = "inapplicable"


@dataclass
class VerificationReport:
    """Outcome of one check, keyed by a stable theorem tag such as ``thm.convexity``."""

    tag: str
    passed: bool
    details: dict = field(default_factory=dict)
    applicable: bool = True

    @property
    def status(self) -> str:
        if not self.applicable:
            return INAPPLICABLE
        return PASS if self.passed else FAIL

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {"tag": self.tag, "status": self.status, "details": jsonable(self.details)}


def jsonable(x):
    """Convert nested results into JSON-safe values with a fixed representation."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        if math.isinf(x):
            return "INFINITE"
        return float(repr(x))
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return jsonable(x.to_json())
    return str(x)
