"""Iterated integrals over products of ordered simplices."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from ..errors import InvalidInput
from ..perms import Permutation
from .forms import Form2, QuadratureConfig, Rectangle
from .oracle import _perm_images, chain_segments, exact_value
from .rules import chain_rule, sample_chain

_CHUNK = 1 << 21  # matrix entries per block


@dataclass(frozen=True)
class QuadResult:
    value: float | Fraction
    est_error: float
    method: str
    seed: int | None = None

    def as_dict(self) -> dict:
        v = self.value
        return {
            "value": str(v) if isinstance(v, Fraction) else float(v),
            "est_error": float(self.est_error),
            "method": self.method,
            "seed": self.seed,
        }


def threads() -> int:
    try:
        return max(1, int(os.environ.get("MEMBRANE_THREADS", "1")))
    except ValueError:
        return 1


def _float_segments(segs) -> tuple[tuple[float, float], ...]:
    return tuple((float(a), float(b)) for a, b in segs)


def _by_variable(pts: np.ndarray, order: tuple[int, ...]) -> np.ndarray:
    out = np.empty_like(pts)
    for k, v in enumerate(order):
        out[:, v - 1] = pts[:, k]
    return out


def contract(
    forms: Sequence[Callable], X: np.ndarray, wx: np.ndarray, Y: np.ndarray, wy: np.ndarray
) -> float:
    """``sum_{a,b} wx_a wy_b prod_i f_i(X[a, i], Y[b, i])``.

    Each form is evaluated once per distinct coordinate pair and gathered,
    so rules with repeated node values stay cheap.
    """
    n = X.shape[1]
    tables = []
    for i in range(n):
        ux, ix = np.unique(X[:, i], return_inverse=True)
        uy, iy = np.unique(Y[:, i], return_inverse=True)
        tables.append((np.asarray(forms[i](ux[:, None], uy[None, :]), dtype=float), ix, iy))
    rows = max(1, _CHUNK // max(1, len(wy)))
    blocks = [slice(a, min(a + rows, len(wx))) for a in range(0, len(wx), rows)]

    def block(sl: slice) -> float:
        prod = np.ones((sl.stop - sl.start, len(wy)))
        for F, ix, iy in tables:
            prod *= F[ix[sl]][:, iy]
        return float(wx[sl] @ prod @ wy)

    if threads() > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(threads()) as ex:
            parts = list(ex.map(block, blocks))
    else:
        parts = [block(b) for b in blocks]
    return float(np.sum(parts))  # fixed block order: reproducible


def _gauss(forms, sx, sy, xseg, yseg, cfg: QuadratureConfig, xbreaks=(), ybreaks=(), points=None) -> float:
    p = points or cfg.points
    px, wx = chain_rule(_float_segments(xseg), p, cfg.cells, tuple(xbreaks))
    py, wy = chain_rule(_float_segments(yseg), p, cfg.cells, tuple(ybreaks))
    return contract(forms, _by_variable(px, sx), wx, _by_variable(py, sy), wy)


def _mc(forms, sx, sy, xseg, yseg, cfg: QuadratureConfig) -> tuple[float, float]:
    rng = np.random.default_rng(cfg.seed)
    px, vx = sample_chain(_float_segments(xseg), cfg.samples, rng)
    py, vy = sample_chain(_float_segments(yseg), cfg.samples, rng)
    X, Y = _by_variable(px, sx), _by_variable(py, sy)
    vals = np.ones(cfg.samples)
    for i, f in enumerate(forms):
        vals *= f(X[:, i], Y[:, i])
    vol = vx * vy
    return vol * float(vals.mean()), float(vol * vals.std(ddof=1) / np.sqrt(cfg.samples))


def integrate(
    forms: Sequence[Form2],
    sx: Permutation | Sequence[int],
    sy: Permutation | Sequence[int],
    xcuts: Sequence,
    ycuts: Sequence,
    cfg: QuadratureConfig = QuadratureConfig(),
    xsplit: int | None = None,
    ysplit: int | None = None,
    xbreaks: Sequence[float] = (),
    ybreaks: Sequence[float] = (),
    error_estimate: bool = False,
) -> QuadResult:
    """General entry point: chains over ``xcuts``/``ycuts`` with optional splits."""
    n = len(forms)
    sxi, syi = _perm_images(sx, n), _perm_images(sy, n)
    for f in forms:
        if f.kind == "evaluator" and not f.integrable:
            f(np.zeros(1), np.zeros(1))  # raises the integrability error
    xseg = chain_segments(n, xcuts, xsplit)
    yseg = chain_segments(n, ycuts, ysplit)
    if cfg.method == "exact":
        return QuadResult(exact_value(forms, sxi, syi, xcuts, ycuts, xsplit, ysplit), 0.0, "exact")
    if cfg.method == "mc":
        v, e = _mc(forms, sxi, syi, xseg, yseg, cfg)
        return QuadResult(v, e, "mc", cfg.seed)
    v = _gauss(forms, sxi, syi, xseg, yseg, cfg, xbreaks, ybreaks)
    err = 0.0
    if error_estimate:
        coarse = _gauss(forms, sxi, syi, xseg, yseg, cfg, xbreaks, ybreaks, points=max(1, cfg.points - 2))
        err = abs(v - coarse)
    return QuadResult(v, err, "gauss")


def eval_iterated(
    forms: Sequence[Form2],
    sx: Permutation | Sequence[int],
    sy: Permutation | Sequence[int],
    A: Rectangle = Rectangle.unit(),
    cfg: QuadratureConfig = QuadratureConfig(),
) -> float | Fraction:
    if len(forms) != (len(sx) if not isinstance(sx, Permutation) else sx.n):
        raise InvalidInput("number of forms must equal the permutation size")
    return integrate(forms, sx, sy, (A.ax, A.bx), (A.ay, A.by), cfg).value


def eval_indexed(
    forms: Sequence[Form2],
    sx: Permutation | Sequence[int],
    sy: Permutation | Sequence[int],
    split: int,
    A: Rectangle,
    B: Rectangle,
    cfg: QuadratureConfig = QuadratureConfig(),
) -> float | Fraction:
    """``I^split``: the first ``split`` variables in x-order lie over ``A``, the rest over ``B``."""
    if not A.adjacent_right(B):
        raise InvalidInput("B must share A's right face")
    if not 0 <= split <= len(forms):
        raise InvalidInput(f"split {split} out of range")
    return integrate(forms, sx, sy, (A.ax, A.bx, B.bx), (A.ay, A.by), cfg, xsplit=split).value


def eval_path(
    funcs: Sequence[Callable[[np.ndarray], np.ndarray]],
    order: Permutation | Sequence[int],
    a: float,
    b: float,
    points: int = 16,
    cells: int = 1,
) -> float:
    """One-dimensional analog: ``int f_1(t_1)...f_n(t_n)`` over ``t_{s(1)} <= ... <= t_{s(n)}``."""
    n = len(funcs)
    o = _perm_images(order, n)
    pts, w = chain_rule(((float(a), float(b)),) * n, points, cells)
    T = _by_variable(pts, o)
    vals = np.ones(len(w))
    for i, f in enumerate(funcs):
        vals *= f(T[:, i])
    return float(vals @ w)
