"""Membranes (maps from a rectangle into a target), pullbacks and gluing."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..errors import EvaluationError, InvalidInput, UnsupportedError
from .forms import Form2, Rectangle

MapFn = Callable[[np.ndarray, np.ndarray], np.ndarray]
# omega(point, v1, v2) with the last axis holding target coordinates
TargetForm = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]

FACES = ("bottom", "top", "left", "right")


@dataclass(frozen=True)
class Membrane:
    """``theta: domain -> R^d``; ``map`` broadcasts and stacks coordinates on the last axis."""

    map: MapFn
    domain: Rectangle = Rectangle.unit()
    faces: dict[str, str] = field(default_factory=dict, compare=False)
    jacobian: Callable[[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]] | None = None
    singular_lines: tuple[tuple[str, float], ...] = ()
    label: str = ""

    def __post_init__(self) -> None:
        for k in self.faces:
            if k not in FACES:
                raise InvalidInput(f"unknown face {k!r}")
        for axis, _ in self.singular_lines:
            if axis not in ("x", "y"):
                raise InvalidInput(f"singular line axis must be 'x' or 'y', got {axis!r}")

    def __call__(self, x, y) -> np.ndarray:
        return np.asarray(self.map(np.asarray(x, dtype=float), np.asarray(y, dtype=float)))

    def _guard(self, x: np.ndarray, y: np.ndarray) -> None:
        for axis, c in self.singular_lines:
            v = x if axis == "x" else y
            if np.any(np.abs(v - c) < 1e-13):
                raise EvaluationError(f"membrane {self.label or ''} is not smooth on {axis}={c}")

    def partials(self, x, y, h: float = 1e-5) -> tuple[np.ndarray, np.ndarray]:
        """``(d theta/dx, d theta/dy)``; exact when supplied, else Richardson-extrapolated differences."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        self._guard(x, y)
        if self.jacobian is not None:
            return self.jacobian(x, y)

        def d(h_):
            dx = (self(x + h_, y) - self(x - h_, y)) / (2 * h_)
            dy = (self(x, y + h_) - self(x, y - h_)) / (2 * h_)
            return dx, dy

        (ax, ay), (bx, by) = d(h), d(h / 2)
        return (4 * bx - ax) / 3, (4 * by - ay) / 3

    def breaks(self) -> tuple[tuple[float, ...], tuple[float, ...]]:
        return (
            tuple(c for a, c in self.singular_lines if a == "x"),
            tuple(c for a, c in self.singular_lines if a == "y"),
        )

    def boundary_samples(self, m: int = 33) -> np.ndarray:
        D = self.domain
        t = np.linspace(0.0, 1.0, m)
        xs = float(D.ax) + (float(D.bx) - float(D.ax)) * t
        ys = float(D.ay) + (float(D.by) - float(D.ay)) * t
        pts = [
            self(xs, np.full(m, float(D.ay))),
            self(xs, np.full(m, float(D.by))),
            self(np.full(m, float(D.ax)), ys),
            self(np.full(m, float(D.bx)), ys),
        ]
        return np.concatenate(pts)


def planar_form(g: Form2 | Callable) -> TargetForm:
    """``g(u, v) du ^ dv`` on R^2."""

    def omega(p, a, b):
        return g(p[..., 0], p[..., 1]) * (a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0])

    return omega


def pullback_form(m: Membrane, omega: TargetForm, h: float = 1e-5, label: str = "") -> Form2:
    """Coefficient ``omega(d theta/dx, d theta/dy)`` of the pulled-back 2-form."""

    def f(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        tx, ty = m.partials(x, y, h)
        return omega(m(x, y), tx, ty)

    return Form2.from_function(f, label=label or f"pullback[{m.label}]")


# --- constructions ------------------------------------------------------------------


def affine_membrane(A: np.ndarray, b: np.ndarray, domain: Rectangle = Rectangle.unit(), label: str = "") -> Membrane:
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)

    def mp(x, y):
        return np.stack([A[i, 0] * x + A[i, 1] * y + b[i] for i in range(len(b))], axis=-1)

    def jac(x, y):
        shape = np.broadcast(x, y).shape
        return np.broadcast_to(A[:, 0], shape + (len(b),)), np.broadcast_to(A[:, 1], shape + (len(b),))

    return Membrane(mp, domain, jacobian=jac, label=label or "affine")


@dataclass(frozen=True)
class Path:
    map: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray]

    def __call__(self, x):
        return self.map(np.asarray(x, dtype=float))


def alpha_weights(k: int, x: Sequence[np.ndarray]) -> list[np.ndarray]:
    """Barycentric weights ``t_0 = x_1, t_1 = (1 - x_1) x_2, ..., t_k = prod (1 - x_i)``."""
    out = []
    rest = 1.0
    for i in range(k):
        out.append(rest * x[i])
        rest = rest * (1 - x[i])
    out.append(rest)
    return out


def alpha_map(k: int, vertices: Sequence[Sequence[float]]) -> Path | Membrane:
    """Cube-to-simplex map onto the simplex spanned by ``vertices`` (k = 1 or 2)."""
    if k not in (1, 2):
        raise UnsupportedError("only k = 1 and k = 2 are implemented")
    P = np.asarray(vertices, dtype=float)
    if P.shape[0] != k + 1:
        raise InvalidInput(f"alpha_{k} needs {k + 1} vertices")
    if k == 1:
        return Path(
            lambda x: x[..., None] * P[0] + (1 - x)[..., None] * P[1],
            lambda x: np.broadcast_to(P[0] - P[1], np.shape(x) + (P.shape[1],)),
        )

    def mp(x, y):
        t0, t1, t2 = alpha_weights(2, [x, y])
        return t0[..., None] * P[0] + t1[..., None] * P[1] + t2[..., None] * P[2]

    def jac(x, y):
        x, y = np.broadcast_arrays(x, y)
        dx = P[0] - y[..., None] * P[1] - (1 - y)[..., None] * P[2]
        dy = (1 - x)[..., None] * (P[1] - P[2])
        return dx, dy

    return Membrane(
        mp,
        jacobian=jac,
        faces={"left": "edge P1P2", "right": "vertex P0", "bottom": "edge P0P2", "top": "edge P0P1"},
        label="alpha2",
    )


def _face_mismatch(a: Membrane, b: Membrane, axis: str, c: float, lo: float, hi: float, m: int = 65) -> float:
    t = np.linspace(lo, hi, m)
    cc = np.full(m, c)
    pa = a(cc, t) if axis == "x" else a(t, cc)
    pb = b(cc, t) if axis == "x" else b(t, cc)
    return float(np.max(np.abs(pa - pb)))


def glue_horizontal(left: Membrane, right: Membrane, tol: float = 1e-9) -> Membrane:
    """``left x1 right``: domains side by side, maps agreeing on the shared face."""
    L, R = left.domain, right.domain
    if not L.adjacent_right(R):
        raise InvalidInput("membranes are not horizontally adjacent")
    c = float(L.bx)
    if _face_mismatch(left, right, "x", c, float(L.ay), float(L.by)) > tol:
        raise InvalidInput("membranes disagree on their shared face")

    def mp(x, y):
        x, y = np.broadcast_arrays(x, y)
        return np.where((x <= c)[..., None], left(x, y), right(x, y))

    jac = None
    if left.jacobian is not None and right.jacobian is not None:

        def jac(x, y):
            x, y = np.broadcast_arrays(x, y)
            lx, ly = left.jacobian(x, y)
            rx, ry = right.jacobian(x, y)
            mask = (x <= c)[..., None]
            return np.where(mask, lx, rx), np.where(mask, ly, ry)

    faces = {k: v for k, v in left.faces.items() if k == "left"}
    faces.update({k: v for k, v in right.faces.items() if k == "right"})
    lines = left.singular_lines + right.singular_lines + (("x", c),)
    return Membrane(mp, L.hull(R), faces, jac, lines, f"({left.label}|{right.label})")


def glue_vertical(bottom: Membrane, top: Membrane, tol: float = 1e-9) -> Membrane:
    """``bottom x2 top``."""
    B, T = bottom.domain, top.domain
    if not B.adjacent_above(T):
        raise InvalidInput("membranes are not vertically adjacent")
    c = float(B.by)
    if _face_mismatch(bottom, top, "y", c, float(B.ax), float(B.bx)) > tol:
        raise InvalidInput("membranes disagree on their shared face")

    def mp(x, y):
        x, y = np.broadcast_arrays(x, y)
        return np.where((y <= c)[..., None], bottom(x, y), top(x, y))

    jac = None
    if bottom.jacobian is not None and top.jacobian is not None:

        def jac(x, y):
            x, y = np.broadcast_arrays(x, y)
            bx, by = bottom.jacobian(x, y)
            tx, ty = top.jacobian(x, y)
            mask = (y <= c)[..., None]
            return np.where(mask, bx, tx), np.where(mask, by, ty)

    faces = {k: v for k, v in bottom.faces.items() if k == "bottom"}
    faces.update({k: v for k, v in top.faces.items() if k == "top"})
    lines = bottom.singular_lines + top.singular_lines + (("y", c),)
    return Membrane(mp, B.hull(T), faces, jac, lines, f"({bottom.label}/{top.label})")


def restrict(m: Membrane, domain: Rectangle, label: str = "") -> Membrane:
    """Same map on a sub-rectangle."""
    D = m.domain
    if not (D.ax <= domain.ax and domain.bx <= D.bx and D.ay <= domain.ay and domain.by <= D.by):
        raise InvalidInput("restriction domain must lie inside the membrane's domain")
    return Membrane(m.map, domain, {}, m.jacobian, m.singular_lines, label or m.label)


def boundary_mismatch(m0: Membrane, m1: Membrane, samples: int = 65) -> float:
    if m0.domain != m1.domain:
        raise InvalidInput("membranes live on different domains")
    return float(np.max(np.abs(m0.boundary_samples(samples) - m1.boundary_samples(samples))))
