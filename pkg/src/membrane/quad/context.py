"""Realizations: generators of the word algebra evaluated as iterated integrals.

A generator ``(word, sigma2, xsplit, ysplit)`` is realized by attaching form
``forms[word[j] - 1]`` to variable ``j``, ordering x by the identity and y by
``sigma2``, and confining the first ``xsplit`` (resp. ``ysplit``) chain
positions to the first interval of a cut axis.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Sequence

from ..errors import InvalidInput
from ..hopf import Monomial
from .forms import Form2, QuadratureConfig, Rectangle
from .integrate import integrate
from .membranes import Membrane, TargetForm, pullback_form


class Realization:
    def __init__(
        self,
        forms: Sequence[Form2],
        xcuts: Sequence,
        ycuts: Sequence,
        cfg: QuadratureConfig = QuadratureConfig(),
        xbreaks: Sequence[float] = (),
        ybreaks: Sequence[float] = (),
    ):
        if len(xcuts) not in (2, 3) or len(ycuts) not in (2, 3):
            raise InvalidInput("cut lists need 2 or 3 points")
        self.forms = list(forms)
        self.xcuts, self.ycuts = tuple(xcuts), tuple(ycuts)
        self.cfg = cfg
        self.xbreaks = tuple(float(b) for b in xbreaks)
        self.ybreaks = tuple(float(b) for b in ybreaks)
        self._cache: dict[Monomial, float | Fraction] = {}
        self._lock = threading.Lock()

    @property
    def alphabet(self) -> int:
        return len(self.forms)

    def _axis(self, cuts, split, breaks):
        if split is None and len(cuts) == 3:
            return (cuts[0], cuts[2]), breaks + (float(cuts[1]),)
        if split is not None and len(cuts) == 2:
            raise InvalidInput("split generator on an uncut axis")
        return cuts, breaks

    def __call__(self, m: Monomial) -> float | Fraction:
        if m.degree == 0:
            return Fraction(1) if self.cfg.method == "exact" else 1.0
        with self._lock:
            if m in self._cache:
                return self._cache[m]
        if any(not 1 <= a <= self.alphabet for a in m.word):
            raise InvalidInput(f"{m} uses a letter outside the {self.alphabet} available forms")
        xc, xb = self._axis(self.xcuts, m.xsplit, self.xbreaks)
        yc, yb = self._axis(self.ycuts, m.ysplit, self.ybreaks)
        n = m.degree
        value = integrate(
            [self.forms[a - 1] for a in m.word],
            tuple(range(1, n + 1)),
            m.sigma2,
            xc,
            yc,
            self.cfg,
            xsplit=m.xsplit,
            ysplit=m.ysplit,
            xbreaks=xb,
            ybreaks=yb,
        ).value
        with self._lock:
            self._cache[m] = value
        return value


def rectangle_realization(forms: Sequence[Form2], A: Rectangle, cfg: QuadratureConfig = QuadratureConfig()):
    return Realization(forms, (A.ax, A.bx), (A.ay, A.by), cfg)


class HorizontalPair:
    """Realizations attached to rectangles ``A`` (left) and ``B`` (right)."""

    def __init__(self, forms: Sequence[Form2], A: Rectangle, B: Rectangle, cfg: QuadratureConfig = QuadratureConfig()):
        if not A.adjacent_right(B):
            raise InvalidInput("rectangles must share the face {b1} x [a2, b2]")
        self.left = rectangle_realization(forms, A, cfg)
        self.right = rectangle_realization(forms, B, cfg)
        self.glued = Realization(forms, (A.ax, A.bx, B.bx), (A.ay, A.by), cfg)

    def value_left(self, m: Monomial):
        return self.left(m)

    def value_right(self, m: Monomial):
        return self.right(m)

    def value_glued(self, m: Monomial):
        return self.glued(m)

    def value_indexed(self, m: Monomial):
        if m.xsplit is None:
            raise InvalidInput(f"{m} carries no split index")
        return self.glued(m)


class Grid2x2:
    """Four rectangles ``A | B`` over ``C | D`` with A, B on the bottom row.

    Cells: A = [x0,x1]x[y0,y1], B = [x1,x2]x[y0,y1], C = [x0,x1]x[y1,y2],
    D = [x1,x2]x[y1,y2].
    """

    def __init__(self, forms: Sequence[Form2], xcuts: Sequence, ycuts: Sequence, cfg: QuadratureConfig = QuadratureConfig()):
        if len(xcuts) != 3 or len(ycuts) != 3:
            raise InvalidInput("a 2x2 grid needs three cut points per axis")
        x0, x1, x2 = xcuts
        y0, y1, y2 = ycuts
        if not (x0 < x1 < x2 and y0 < y1 < y2):
            raise InvalidInput("grid cuts must be increasing")
        self.whole = Realization(forms, xcuts, ycuts, cfg)
        self.left_col = Realization(forms, (x0, x1), ycuts, cfg)
        self.right_col = Realization(forms, (x1, x2), ycuts, cfg)
        self.bottom_row = Realization(forms, xcuts, (y0, y1), cfg)
        self.top_row = Realization(forms, xcuts, (y1, y2), cfg)


class MembraneRealization(Realization):
    """Generators realized by the pullbacks of target forms along a membrane."""

    def __init__(
        self,
        membrane: Membrane,
        target_forms: Sequence[TargetForm],
        cfg: QuadratureConfig = QuadratureConfig(),
        h: float = 1e-5,
        xcut: float | None = None,
        ycut: float | None = None,
    ):
        D = membrane.domain
        xb, yb = membrane.breaks()
        pulled = [pullback_form(membrane, w, h) for w in target_forms]
        xc = (D.ax, D.bx) if xcut is None else (D.ax, xcut, D.bx)
        yc = (D.ay, D.by) if ycut is None else (D.ay, ycut, D.by)
        super().__init__(pulled, xc, yc, cfg, xb, yb)
        self.membrane = membrane
