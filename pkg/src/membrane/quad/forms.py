"""Rectangles, 2-form descriptors and quadrature settings."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Literal

import numpy as np

from ..errors import IntegrabilityError, InvalidInput

Number = Fraction | int | float


def _exact(v: Number) -> Number:
    if isinstance(v, (Fraction, int)):
        return Fraction(v)
    return v


@dataclass(frozen=True)
class Rectangle:
    ax: Number
    bx: Number
    ay: Number
    by: Number

    def __post_init__(self) -> None:
        for name in ("ax", "bx", "ay", "by"):
            v = getattr(self, name)
            if isinstance(v, float) and not math.isfinite(v):
                raise InvalidInput(f"{name} must be finite")
            object.__setattr__(self, name, _exact(v))
        if not (self.ax < self.bx and self.ay < self.by):
            raise InvalidInput(f"degenerate rectangle [{self.ax},{self.bx}]x[{self.ay},{self.by}]")

    @classmethod
    def unit(cls) -> "Rectangle":
        return cls(0, 1, 0, 1)

    @property
    def area(self) -> Number:
        return (self.bx - self.ax) * (self.by - self.ay)

    def is_rational(self) -> bool:
        return all(isinstance(v, Fraction) for v in (self.ax, self.bx, self.ay, self.by))

    def adjacent_right(self, other: "Rectangle") -> bool:
        return self.bx == other.ax and self.ay == other.ay and self.by == other.by

    def adjacent_above(self, other: "Rectangle") -> bool:
        return self.by == other.ay and self.ax == other.ax and self.bx == other.bx

    def hull(self, other: "Rectangle") -> "Rectangle":
        return Rectangle(min(self.ax, other.ax), max(self.bx, other.bx), min(self.ay, other.ay), max(self.by, other.by))


PolyTerms = tuple[tuple[Fraction, int, int], ...]


@dataclass(frozen=True)
class Form2:
    """``f(x, y) dx ^ dy``, either a polynomial or an opaque evaluator.

    Evaluators must accept broadcastable numpy arrays.
    """

    kind: Literal["polynomial", "evaluator"]
    terms: PolyTerms = ()
    func: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = field(default=None, compare=False)
    smooth: bool = True
    integrable: bool = True
    label: str = ""

    def __post_init__(self) -> None:
        if self.kind == "polynomial":
            seen = set()
            clean = []
            for c, px, py in self.terms:
                px, py = int(px), int(py)
                if px < 0 or py < 0:
                    raise InvalidInput("polynomial exponents must be non-negative")
                if (px, py) in seen:
                    raise InvalidInput(f"duplicate monomial x^{px} y^{py}")
                seen.add((px, py))
                clean.append((Fraction(c), px, py))
            object.__setattr__(self, "terms", tuple(sorted(clean, key=lambda t: (t[1], t[2]))))
        elif self.kind == "evaluator":
            if self.func is None:
                raise InvalidInput("evaluator form needs a function")
        else:
            raise InvalidInput(f"unknown form kind {self.kind!r}")

    @classmethod
    def poly(cls, coeffs: dict[tuple[int, int], Number] | Iterable[tuple[Number, int, int]]) -> "Form2":
        if isinstance(coeffs, dict):
            items = [(c, px, py) for (px, py), c in coeffs.items()]
        else:
            items = list(coeffs)
        return cls("polynomial", tuple((Fraction(c), px, py) for c, px, py in items))

    @classmethod
    def constant(cls, c: Number = 1) -> "Form2":
        return cls.poly({(0, 0): c})

    @classmethod
    def from_function(cls, f, *, smooth: bool = True, integrable: bool = True, label: str = "") -> "Form2":
        return cls("evaluator", func=f, smooth=smooth, integrable=integrable, label=label)

    @property
    def is_polynomial(self) -> bool:
        return self.kind == "polynomial"

    def degrees(self) -> tuple[int, int]:
        if not self.is_polynomial:
            return (-1, -1)
        return (max((t[1] for t in self.terms), default=0), max((t[2] for t in self.terms), default=0))

    def __call__(self, x, y):
        if self.kind == "evaluator":
            if not self.integrable:
                raise IntegrabilityError(f"form {self.label or '<evaluator>'} is flagged non-integrable")
            return self.func(x, y)
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape)
        for c, px, py in self.terms:
            out = out + float(c) * x**px * y**py
        return out

    def to_json(self) -> dict[str, Any]:
        if self.is_polynomial:
            return {"poly": [[str(c), px, py] for c, px, py in self.terms]}
        return {"builtin": self.label}


BUILTINS: dict[str, Callable[[], Form2]] = {
    "one": lambda: Form2.constant(1),
    "x": lambda: Form2.poly({(1, 0): 1}),
    "y": lambda: Form2.poly({(0, 1): 1}),
    "xy": lambda: Form2.poly({(1, 1): 1}),
    "gauss": lambda: Form2.from_function(lambda x, y: np.exp(-(x * x + y * y)), label="gauss"),
    "cos": lambda: Form2.from_function(lambda x, y: np.cos(x + 2 * y), label="cos"),
    "singular": lambda: Form2.from_function(
        lambda x, y: 1.0 / (x * x + y * y), integrable=False, label="singular"
    ),
}


def form_from_json(obj: Any) -> Form2:
    if isinstance(obj, str):
        obj = {"builtin": obj}
    if not isinstance(obj, dict):
        raise InvalidInput(f"cannot read form from {obj!r}")
    if "poly" in obj:
        try:
            return Form2.poly([(Fraction(str(c)), int(px), int(py)) for c, px, py in obj["poly"]])
        except (TypeError, ValueError) as exc:
            raise InvalidInput(f"bad polynomial form {obj!r}") from exc
    if "builtin" in obj:
        name = obj["builtin"]
        if name not in BUILTINS:
            raise InvalidInput(f"unknown built-in form {name!r}; known: {sorted(BUILTINS)}")
        return BUILTINS[name]()
    raise InvalidInput(f"form needs 'poly' or 'builtin': {obj!r}")


@dataclass(frozen=True)
class QuadratureConfig:
    """How to evaluate an iterated integral.

    ``exact`` uses the rational oracle (polynomial forms only), ``gauss``
    the ordered-cell Gauss rule, ``mc`` seeded Monte Carlo.
    """

    method: Literal["exact", "gauss", "mc"] = "gauss"
    points: int = 8
    cells: int = 1
    samples: int = 200_000
    seed: int = 0
    tolerance: float = 1e-8

    def __post_init__(self) -> None:
        if self.method not in ("exact", "gauss", "mc"):
            raise InvalidInput(f"unknown quadrature method {self.method!r}")
        if self.points < 1 or self.cells < 1 or self.samples < 2:
            raise InvalidInput("quadrature counts must be positive")
        if not self.tolerance > 0:
            raise InvalidInput("tolerance must be positive")
