"""Exact rational evaluation of iterated integrals of polynomial forms.

The domain is a product of an x-chain and a y-chain of ordered variables,
so after expanding the product of the forms into monomials every term
factors into two one-dimensional nested integrals, each done by repeated
antidifferentiation.  A chain may run across consecutive intervals (the
indexed domains of a glued rectangle): positions are assigned to intervals
in order, and ordering across different intervals is automatic.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ..errors import InvalidInput
from ..perms import Permutation
from .forms import Form2, Rectangle

Poly = dict[int, Fraction]
Segment = tuple[Fraction, Fraction]


def _mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for a, c in p.items():
        for b, d in q.items():
            out[a + b] = out.get(a + b, Fraction(0)) + c * d
    return out


def _eval(p: Poly, t: Fraction) -> Fraction:
    return sum((c * t**k for k, c in p.items()), Fraction(0))


def _antiderivative_from(p: Poly, lo: Fraction) -> Poly:
    out = {k + 1: c / (k + 1) for k, c in p.items()}
    out[0] = out.get(0, Fraction(0)) - _eval(out, lo)
    return out


def _seg_key(segments: Sequence[Segment]) -> tuple[tuple[int, int, int, int], ...]:
    out = []
    for a, b in segments:
        a, b = Fraction(a), Fraction(b)
        out.append((a.numerator, a.denominator, b.numerator, b.denominator))
    return tuple(out)


def chain_integral(exponents: tuple[int, ...], segments: tuple[Segment, ...]) -> Fraction:
    """``int t_1^e_1 ... t_n^e_n`` over ``t_1 <= ... <= t_n``, ``t_k`` in ``segments[k]``."""
    if len(exponents) != len(segments):
        raise InvalidInput("one segment per chain position required")
    return _chain(tuple(exponents), _seg_key(segments))


@lru_cache(maxsize=None)
def _chain(exponents: tuple[int, ...], key: tuple[tuple[int, int, int, int], ...]) -> Fraction:
    # cache keyed on integers: hashing Fractions is comparatively slow
    segments = tuple((Fraction(p, q), Fraction(r, s)) for p, q, r, s in key)
    F: Poly = {0: Fraction(1)}
    for k, (e, seg) in enumerate(zip(exponents, segments)):
        if k and seg != segments[k - 1]:
            prev = segments[k - 1]
            if seg[0] < prev[1]:
                raise InvalidInput("chain segments must be non-overlapping and increasing")
            F = {0: _eval(F, prev[1])}
        F = _antiderivative_from(_mul({e: Fraction(1)}, F), seg[0])
    return _eval(F, segments[-1][1]) if segments else Fraction(1)


def chain_segments(n: int, cuts: Sequence, split: int | None) -> tuple[Segment, ...]:
    """Interval for each chain position: ``cuts=(a, b)`` or ``(a, m, c)`` with ``split`` in the first."""
    cuts = tuple(Fraction(c) for c in cuts)
    if len(cuts) == 2:
        if split not in (None,):
            raise InvalidInput("a split needs three cut points")
        return ((cuts[0], cuts[1]),) * n
    if len(cuts) != 3 or split is None or not 0 <= split <= n:
        raise InvalidInput(f"invalid cuts {cuts} / split {split}")
    return ((cuts[0], cuts[1]),) * split + ((cuts[1], cuts[2]),) * (n - split)


def _perm_images(p: Permutation | Sequence[int], n: int) -> tuple[int, ...]:
    imgs = tuple(p.normalized().images) if isinstance(p, Permutation) else tuple(p)
    if sorted(imgs) != list(range(1, n + 1)):
        raise InvalidInput(f"ordering {imgs} does not match {n} forms")
    return imgs


def exact_value(
    forms: Sequence[Form2],
    sx: Permutation | Sequence[int],
    sy: Permutation | Sequence[int],
    xcuts: Sequence,
    ycuts: Sequence,
    xsplit: int | None = None,
    ysplit: int | None = None,
) -> Fraction:
    """Form ``forms[i]`` sits on variable ``i + 1``; ``sx``/``sy`` order the variables."""
    n = len(forms)
    sx, sy = _perm_images(sx, n), _perm_images(sy, n)
    for f in forms:
        if not f.is_polynomial:
            raise InvalidInput("the exact oracle accepts polynomial forms only")
        for c, _, _ in f.terms:
            if not isinstance(c, Fraction):
                raise InvalidInput("polynomial coefficients must be rational")
    for c in (*xcuts, *ycuts):
        if isinstance(c, float) and c != Fraction(c):  # pragma: no cover - floats are dyadic
            raise InvalidInput("bounds must be rational")
    xseg = chain_segments(n, xcuts, xsplit)
    yseg = chain_segments(n, ycuts, ysplit)
    # integer coefficients per form (common denominator), summed per distinct exponent pair;
    # Fraction arithmetic then runs once per pair instead of once per expanded term
    dens = [math.lcm(*(c.denominator for c, _, _ in f.terms)) if f.terms else 1 for f in forms]
    iterms = [[(int(c * d), px, py) for c, px, py in f.terms] for f, d in zip(forms, dens)]
    acc: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
    for choice in itertools.product(*iterms):
        coeff = 1
        for c, _, _ in choice:
            coeff *= c
        if coeff:
            key = (tuple(choice[v - 1][1] for v in sx), tuple(choice[v - 1][2] for v in sy))
            acc[key] = acc.get(key, 0) + coeff
    xk, yk = _seg_key(xseg), _seg_key(yseg)
    xm: dict[tuple[int, ...], Fraction] = {}
    ym: dict[tuple[int, ...], Fraction] = {}
    total = Fraction(0)
    for (ex, ey), coeff in acc.items():
        if not coeff:
            continue
        if ex not in xm:
            xm[ex] = _chain(ex, xk)
        if ey not in ym:
            ym[ey] = _chain(ey, yk)
        total += coeff * xm[ex] * ym[ey]
    return total / math.prod(dens)


def poly_oracle(
    forms: Sequence[Form2],
    sx: Permutation | Sequence[int],
    sy: Permutation | Sequence[int],
    A: Rectangle = Rectangle.unit(),
) -> Fraction:
    if not A.is_rational():
        raise InvalidInput("the exact oracle needs rational bounds")
    return exact_value(forms, sx, sy, (A.ax, A.bx), (A.ay, A.by))


def poly_oracle_indexed(
    forms: Sequence[Form2],
    sx: Permutation | Sequence[int],
    sy: Permutation | Sequence[int],
    split: int,
    A: Rectangle,
    B: Rectangle,
) -> Fraction:
    if not A.adjacent_right(B):
        raise InvalidInput("B must share A's right face")
    if not (A.is_rational() and B.is_rational()):
        raise InvalidInput("the exact oracle needs rational bounds")
    return exact_value(forms, sx, sy, (A.ax, A.bx, B.bx), (A.ay, A.by), xsplit=split)
