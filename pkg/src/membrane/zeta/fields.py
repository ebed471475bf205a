"""Quadratic fields of class number one and their rings of integers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np

from ..errors import InvalidInput

IMAG_CLASS_ONE = (-1, -2, -3, -7, -11, -19, -43, -67, -163)
REAL_CLASS_ONE = (
    2, 3, 5, 6, 7, 11, 13, 14, 17, 19, 21, 22, 23, 29, 31, 33, 37, 38, 41, 43,
    46, 47, 53, 57, 59, 61, 62, 67, 69, 71, 73, 77, 83, 86, 89, 93, 94, 97,
)


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol ``(d / n)`` for ``n >= 1``."""
    if n < 1:
        raise InvalidInput("kronecker symbol needs n >= 1")
    result = 1
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            result = -result
    # Jacobi symbol (d / n) for odd n
    a = d % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@lru_cache(maxsize=None)
def _pell_unit(D: int) -> tuple[int, int, int]:
    """Fundamental unit ``(x + y sqrt(D)) / c`` by search over ``y``."""
    c = 2 if D % 4 == 1 else 1
    target = (-4, 4) if c == 2 else (-1, 1)  # norm -1 first: smaller x for the same y
    y = 1
    while True:
        for t in target:
            x2 = D * y * y + t
            if x2 > 0:
                x = math.isqrt(x2)
                if x * x == x2 and (c == 1 or (x - y) % 2 == 0):
                    return x, y, c
        y += 1
        if y > 10**7:  # pragma: no cover - allowlisted fields are far below this
            raise InvalidInput(f"no unit found for D={D}")


@dataclass(frozen=True)
class NumberFieldSpec:
    """ℚ, or ℚ(√D) with squarefree ``D`` from the class-number-one allowlist."""

    kind: Literal["rational", "imag_quadratic", "real_quadratic"]
    D: int = 1

    def __post_init__(self) -> None:
        if self.kind == "rational":
            object.__setattr__(self, "D", 1)
        elif self.kind == "imag_quadratic":
            if self.D not in IMAG_CLASS_ONE:
                raise InvalidInput(f"Q(sqrt({self.D})) is not a supported class-number-one field")
        elif self.kind == "real_quadratic":
            if self.D not in REAL_CLASS_ONE:
                raise InvalidInput(f"Q(sqrt({self.D})) is not a supported class-number-one field")
        else:
            raise InvalidInput(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> "NumberFieldSpec":
        return cls("rational")

    @classmethod
    def quadratic(cls, D: int) -> "NumberFieldSpec":
        return cls("imag_quadratic" if D < 0 else "real_quadratic", D)

    @classmethod
    def parse(cls, text: str) -> "NumberFieldSpec":
        """``Q``, ``Qi``, ``Q:sqrt5``, ``Q:sqrt-3``."""
        t = text.strip()
        if t == "Q":
            return cls.rational()
        if t == "Qi":
            return cls.quadratic(-1)
        if t.startswith("Q:sqrt"):
            try:
                D = int(t[6:])
            except ValueError as exc:
                raise InvalidInput(f"cannot parse field {text!r}") from exc
            return cls.quadratic(D)
        raise InvalidInput(f"cannot parse field {text!r}; use Q, Qi or Q:sqrtD")

    @property
    def name(self) -> str:
        if self.kind == "rational":
            return "Q"
        return "Qi" if self.D == -1 else f"Q:sqrt{self.D}"

    @property
    def degree(self) -> int:
        return 1 if self.kind == "rational" else 2

    @property
    def discriminant(self) -> int:
        if self.kind == "rational":
            return 1
        return self.D if self.D % 4 == 1 else 4 * self.D

    @property
    def roots_of_unity(self) -> int:
        if self.kind == "imag_quadratic":
            return {-1: 4, -3: 6}.get(self.D, 2)
        return 2

    w = roots_of_unity

    @property
    def unit(self) -> tuple[int, int, int]:
        """Fundamental unit as ``(a, b, c)`` meaning ``(a + b sqrt(D)) / c``."""
        if self.kind != "real_quadratic":
            raise InvalidInput("only real quadratic fields have a fundamental unit of infinite order")
        return _pell_unit(self.D)

    @property
    def unit_embeddings(self) -> tuple[float, float]:
        a, b, c = self.unit
        r = math.sqrt(self.D)
        return (a + b * r) / c, (a - b * r) / c

    @property
    def unit_norm(self) -> int:
        a, b, c = self.unit
        return (a * a - self.D * b * b) // (c * c)

    @property
    def regulator(self) -> float:
        return math.log(self.unit_embeddings[0])

    def chi(self, n: int) -> int:
        """Quadratic character attached to the field (trivial for ℚ)."""
        if self.kind == "rational":
            return 1
        return kronecker(self.discriminant, n)

    # -- ring of integers: alpha = a + b*omega ------------------------------------------

    def norm(self, a, b):
        """``N(a + b omega)`` (integer-valued, vectorized)."""
        D = self.D
        if self.kind == "rational":
            return a * a
        if D % 4 == 1:
            return a * a + a * b + b * b * ((1 - D) // 4)
        return a * a - D * b * b

    def real_embeddings(self, a, b) -> tuple[np.ndarray, np.ndarray]:
        if self.kind != "real_quadratic":
            raise InvalidInput("real embeddings need a real quadratic field")
        r = math.sqrt(self.D)
        if self.D % 4 == 1:
            w1, w2 = (1 + r) / 2, (1 - r) / 2
        else:
            w1, w2 = r, -r
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        return a + b * w1, a + b * w2

    @property
    def omega_gap(self) -> float:
        """``omega_1 - omega_2``."""
        r = math.sqrt(self.D)
        return r if self.D % 4 == 1 else 2 * r


def lattice_norms(K: NumberFieldSpec, M: int) -> np.ndarray:
    """``r[m]`` = number of ``alpha`` in O_K with ``N(alpha) = m``, for ``0 <= m <= M`` (imaginary fields)."""
    if K.kind != "imag_quadratic":
        raise InvalidInput("norm counting by enumeration needs an imaginary quadratic field")
    return _lattice_norms(K.D, int(M))


@lru_cache(maxsize=32)
def _lattice_norms(D: int, M: int) -> np.ndarray:
    K = NumberFieldSpec.quadratic(D)
    # N(a + b omega) >= |D| b^2 / 4  so  |b| <= 2 sqrt(M / |D|)
    bmax = int(2 * math.sqrt(M / abs(D))) + 1
    amax = int(math.sqrt(M)) + bmax + 1
    a, b = np.meshgrid(np.arange(-amax, amax + 1), np.arange(-bmax, bmax + 1), indexing="ij")
    n = K.norm(a, b).ravel()
    n = n[n <= M]
    out = np.bincount(n, minlength=M + 1)
    out.setflags(write=False)
    return out
