from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any


def jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "item") and callable(value.item):  # numpy scalar
        return value.item()
    return value


@dataclass
class CheckReport:
    """Outcome of a property/identity check."""

    name: str
    passed: bool
    max_deviation: float | Fraction = 0
    tolerance: float = 0.0
    checked: int = 0
    details: dict[str, Any] = field(default_factory=dict)

    def line(self) -> str:
        return json.dumps(jsonable(asdict(self)), sort_keys=True)

    def __bool__(self) -> bool:
        return self.passed
