"""Quadrature rules for ordered chains ``t_1 <= ... <= t_n``.

Each chain interval is cut into cells; every non-decreasing assignment of
positions to cells is one order cell.  Positions sharing a cell form an
ordered simplex, mapped from the unit cube by the Duffy collapse
``y_k = lo + L * v_k * v_{k+1} * ... * v_g`` whose Jacobian
``L^g prod v_j^(j-1)`` is absorbed into Gauss-Jacobi weights, so polynomial
integrands of degree ``<= 2 p - 1`` per axis are integrated exactly.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.special import roots_jacobi

Segment = tuple[float, float]


@lru_cache(maxsize=None)
def _jacobi01(p: int, beta: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights on [0, 1] for ``int_0^1 v^beta f(v) dv``."""
    if beta == 0:
        x, w = np.polynomial.legendre.leggauss(p)
    else:
        x, w = roots_jacobi(p, 0.0, float(beta))
    return (x + 1) / 2, w / 2 ** (beta + 1)


@lru_cache(maxsize=None)
def simplex_rule(g: int, lo: float, hi: float, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Points (N, g), sorted along axis 1, and weights for ``lo <= y_1 <= ... <= y_g <= hi``."""
    if g == 0:
        return np.zeros((1, 0)), np.ones(1)
    L = hi - lo
    rules = [_jacobi01(p, j) for j in range(g)]  # v_1 .. v_g with weight v_j^(j-1)
    grids = np.meshgrid(*[r[0] for r in rules], indexing="ij")
    wgrid = np.meshgrid(*[r[1] for r in rules], indexing="ij")
    v = np.stack([gr.ravel() for gr in grids], axis=1)
    w = np.prod(np.stack([gr.ravel() for gr in wgrid], axis=1), axis=1) * L**g
    cum = np.cumprod(v[:, ::-1], axis=1)[:, ::-1]  # cum[:, k] = prod_{j >= k} v_j
    return lo + L * cum, w


def _cells(lo: float, hi: float, cells: int, breaks: Sequence[float]) -> list[Segment]:
    edges = set(np.linspace(lo, hi, cells + 1).tolist())
    edges.update(b for b in breaks if lo < b < hi)
    e = sorted(edges)
    return [(e[k], e[k + 1]) for k in range(len(e) - 1)]


def _tensor(parts: list[tuple[np.ndarray, np.ndarray]]) -> tuple[np.ndarray, np.ndarray]:
    pts, w = np.zeros((1, 0)), np.ones(1)
    for q, v in parts:
        pts = np.concatenate(
            [np.repeat(pts, len(v), axis=0), np.tile(q, (len(w), 1))], axis=1
        )
        w = np.repeat(w, len(v)) * np.tile(v, len(w))
    return pts, w


def ordered_rule(n: int, edges: Sequence[float], p: int) -> tuple[np.ndarray, np.ndarray]:
    """Rule for ``t_1 <= ... <= t_n`` on ``[edges[0], edges[-1]]`` with the given cell edges."""
    e = [float(v) for v in edges]
    cs = [(e[k], e[k + 1]) for k in range(len(e) - 1)]
    pts_l, w_l = [], []
    for assign in itertools.combinations_with_replacement(range(len(cs)), n):
        runs = [(c, len(list(r))) for c, r in itertools.groupby(assign)]
        q, w = _tensor([simplex_rule(size, cs[c][0], cs[c][1], p) for c, size in runs])
        pts_l.append(q)
        w_l.append(w)
    return np.concatenate(pts_l), np.concatenate(w_l)


@lru_cache(maxsize=256)
def chain_rule(
    segments: tuple[Segment, ...], p: int, cells: int = 1, breaks: tuple[float, ...] = ()
) -> tuple[np.ndarray, np.ndarray]:
    """Rule for a chain whose position ``k`` is confined to ``segments[k]``."""
    n = len(segments)
    if n == 0:
        return np.zeros((1, 0)), np.ones(1)
    groups = [list(g) for _, g in itertools.groupby(segments)]
    per_group = []
    for grp in groups:
        lo, hi = grp[0]
        cs = _cells(float(lo), float(hi), cells, breaks)
        edges = [c[0] for c in cs] + [cs[-1][1]]
        per_group.append(ordered_rule(len(grp), edges, p))
    return _tensor(per_group)


def sample_chain(segments: tuple[Segment, ...], size: int, rng: np.random.Generator) -> tuple[np.ndarray, float]:
    """Uniform samples on the ordered chain domain and its volume."""
    n = len(segments)
    out = np.empty((size, n))
    vol = 1.0
    k = 0
    for seg, grp in itertools.groupby(segments):
        g = len(list(grp))
        lo, hi = float(seg[0]), float(seg[1])
        u = np.sort(rng.uniform(lo, hi, size=(size, g)), axis=1)
        out[:, k : k + g] = u
        vol *= (hi - lo) ** g / float(np.prod(np.arange(1, g + 1)))
        k += g
    return out, vol
