"""Fixed membrane configurations shared by the CLI, the acceptance suite and scripts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .quad.forms import Form2, QuadratureConfig, Rectangle
from .quad.membranes import Membrane, TargetForm, affine_membrane, planar_form, restrict

# 2-forms on the target plane: du^dv, u du^dv, v du^dv
TARGET_FORMS: tuple[TargetForm, ...] = (
    planar_form(lambda u, v: np.ones_like(u)),
    planar_form(lambda u, v: u),
    planar_form(lambda u, v: v),
)


def bump_membrane(eps: float, domain: Rectangle = Rectangle.unit(), label: str = "") -> Membrane:
    """``(x, y) -> (x + eps * b(x, y), y)`` with ``b = ((x-a)(b-x))((y-c)^2 (d-y))`` normalized to the domain.

    ``b`` vanishes on the whole boundary, so the membrane fixes it pointwise.
    """
    ax, bx, ay, by = (float(v) for v in (domain.ax, domain.bx, domain.ay, domain.by))
    wx, wy = bx - ax, by - ay

    def parts(x, y):
        s = (x - ax) / wx
        r = (y - ay) / wy
        return s, r

    def mp(x, y):
        x, y = np.broadcast_arrays(x, y)
        s, r = parts(x, y)
        return np.stack([x + eps * wx * s * (1 - s) * r * r * (1 - r), y], axis=-1)

    def jac(x, y):
        x, y = np.broadcast_arrays(x, y)
        s, r = parts(x, y)
        dx = np.stack([1 + eps * (1 - 2 * s) * r * r * (1 - r), np.zeros_like(x)], axis=-1)
        dy = np.stack([eps * wx / wy * s * (1 - s) * (2 * r - 3 * r * r), np.ones_like(x)], axis=-1)
        return dx, dy

    return Membrane(mp, domain, jacobian=jac, label=label or f"bump[{eps:g}]")


def identity_membrane(domain: Rectangle = Rectangle.unit()) -> Membrane:
    m = affine_membrane(np.eye(2), np.zeros(2), Rectangle.unit(), label="id")
    return restrict(m, domain, "id") if domain != Rectangle.unit() else m


@dataclass(frozen=True)
class HomotopyScenario:
    """Identity square against a boundary-fixing interior bump of size ``eps``."""

    eps: float = 0.1
    n: int = 2
    tolerance: float = 1e-6
    quadrature: QuadratureConfig = QuadratureConfig(points=10, cells=2)

    def membranes(self) -> tuple[Membrane, Membrane]:
        return identity_membrane(), bump_membrane(self.eps)


@dataclass(frozen=True)
class CocycleScenario:
    """Two decompositions of the unit square.

    ``H = d3 x1 d1`` cuts at ``x = 1/2``, ``V = d2 x2 d0`` at ``y = 1/2``.
    With ``eps = 0`` every piece is the identity; otherwise ``d3`` carries an
    interior bump and the composites differ off the boundary.  ``coherent``
    instead cuts one globally bumped membrane both ways, so ``H`` and ``V``
    are the same map.
    """

    eps: float = 0.1
    degree: int = 2
    coherent: bool = False
    tolerance: float = 1e-5
    quadrature: QuadratureConfig = QuadratureConfig(points=10, cells=2)

    def pieces(self) -> tuple[Membrane, Membrane, Membrane, Membrane]:
        h = Fraction(1, 2)
        left, right = Rectangle(0, h, 0, 1), Rectangle(h, 1, 0, 1)
        bottom, top = Rectangle(0, 1, 0, h), Rectangle(0, 1, h, 1)
        if self.coherent:
            g = bump_membrane(self.eps)
            return restrict(g, left, "d3"), restrict(g, right, "d1"), restrict(g, bottom, "d2"), restrict(g, top, "d0")
        d3 = bump_membrane(self.eps, left, "d3") if self.eps else identity_membrane(left)
        return d3, identity_membrane(right), identity_membrane(bottom), identity_membrane(top)


def polynomial_forms(k: int) -> list[Form2]:
    """``k`` fixed polynomial 2-forms on the plane: 1 + x, y, xy - 1/2, ..."""
    pool = [
        Form2.poly([(1, 0, 0), (1, 1, 0)]),
        Form2.poly([(1, 0, 1)]),
        Form2.poly([(1, 1, 1), (Fraction(-1, 2), 0, 0)]),
        Form2.poly([(2, 2, 0), (-1, 0, 2)]),
    ]
    return pool[:k]
