"""Reference values computed by routes independent of the theta integrators.

* ``nested_path_oracle``: adaptive nested quadrature (scipy) of the ordered
  path integral with theta from ``mpmath.jtheta``.
* ``unfolding_oracle``: real quadratic membrane integrals with the t-integrals
  done in closed form lattice point by lattice point (Gamma functions), the
  x-integrals by quadrature and the far lattice replaced by its area law.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Sequence

import mpmath
import numpy as np
from scipy import integrate as sint
from scipy.special import hyp2f1

from ..errors import InvalidInput
from ..quad.rules import chain_rule
from .fields import NumberFieldSpec
from .theta import _ellipse_points


@lru_cache(maxsize=4096)
def _theta_m1_mp(t: float) -> float:
    if t < 0.5:
        return float((mpmath.jtheta(3, 0, mpmath.exp(-mpmath.pi / t))) / mpmath.sqrt(t) - 1)
    return float(mpmath.jtheta(3, 0, mpmath.exp(-mpmath.pi * t)) - 1)


def nested_path_oracle(exponents: Sequence[float], order: Sequence[int] | None = None) -> float:
    """``int_{t_o(1) < t_o(2)} prod (theta - 1)(t_i) t_i^(s_i/2 - 1) dt`` over Q, for two exponents."""
    if len(exponents) != 2:
        raise InvalidInput("the nested oracle handles two exponents")
    o = tuple(order) if order is not None else (1, 2)
    lo_s, hi_s = exponents[o[0] - 1], exponents[o[1] - 1]

    def f(t, s):
        return _theta_m1_mp(t) * t ** (s / 2 - 1)

    def inner(t2):
        if t2 <= 1:
            return sint.quad(f, 0, t2, args=(lo_s,), epsabs=1e-13, epsrel=1e-12, limit=200)[0]
        a = sint.quad(f, 0, 1, args=(lo_s,), epsabs=1e-13, epsrel=1e-12, limit=200)[0]
        return a + sint.quad(f, 1, t2, args=(lo_s,), epsabs=1e-13, epsrel=1e-12, limit=200)[0]

    def outer(t2):
        return f(t2, hi_s) * inner(t2)

    opts = dict(epsabs=1e-12, epsrel=1e-11, limit=200)
    return sint.quad(outer, 0, 1, **opts)[0] + sint.quad(outer, 1, 60, **opts)[0]


def _forms_at(K: NumberFieldSpec, x: float, M: float) -> np.ndarray:
    a1, a2 = _ellipse_points(K, M, (x, x))
    Q = a1 * a1 * math.exp(x) + a2 * a2 * math.exp(-x)
    return Q[Q <= M]


def unfolding_oracle(
    K: NumberFieldSpec,
    exponents: Sequence[float],
    sigma1: Sequence[int] | None = None,
    sigma2: Sequence[int] | None = None,
    M: float | None = None,
    points: int = 10,
) -> float:
    """Membrane integral over ``[0, inf) x [0, 2 log u]`` (one or two factors) by unfolding.

    ``M`` is the cutoff on ``Q_alpha(x) = a1^2 e^x + a2^2 e^-x``; beyond it
    lattice points are replaced by their density ``pi / sqrt(d)``.
    """
    if K.kind != "real_quadratic":
        raise InvalidInput(f"{K.name} is not real quadratic")
    d = len(exponents)
    L = 2 * math.log(K.unit_embeddings[0])
    dens = math.pi / math.sqrt(K.discriminant)
    if d == 1:
        (s,) = exponents
        M = M or 4e4
        cells = max(1, math.ceil(L))
        x, w = np.polynomial.legendre.leggauss(4 * points)
        xs = np.concatenate([(x + 1) * L / (2 * cells) + k * L / cells for k in range(cells)])
        ws = np.tile(w * L / (2 * cells), cells)
        total = 0.0
        for xi, wi in zip(xs, ws):
            Q = _forms_at(K, float(xi), M)
            total += wi * (np.sum(Q**-s) + dens * M ** (1 - s) / (s - 1))
        return math.gamma(s) * math.pi**-s * total
    if d != 2:
        raise InvalidInput("the unfolding oracle handles one or two factors")
    M = M or 300.0
    s1 = tuple(sigma1) if sigma1 is not None else (1, 2)
    s2 = tuple(sigma2) if sigma2 is not None else (1, 2)
    i, j = s1[0] - 1, s1[1] - 1  # t_i < t_j
    si, sj = exponents[i], exponents[j]
    S = si + sj
    # u = t_i / t_j in (0, 1) carries weight u^(s_i - 1); every u-integral is a 2F1:
    # int_0^1 u^(c-1) (p u + q)^-e du = q^-e / c * 2F1(e, c; c + 1; -p / q)
    def ui(c, e, p, q):
        return q**-e / c * hyp2f1(e, c, c + 1, -p / q)

    px, wx = chain_rule(((0.0, L), (0.0, L)), points, max(1, math.ceil(L)))
    total = 0.0
    cache: dict[float, np.ndarray] = {}
    for row, wrow in zip(px, wx):
        X = [0.0, 0.0]
        X[s2[0] - 1], X[s2[1] - 1] = row
        A = cache.setdefault(X[i], _forms_at(K, X[i], M))
        B = cache.setdefault(X[j], _forms_at(K, X[j], M))
        inside = np.sum(ui(si, S, A[:, None], B[None, :]))
        # lattice beyond M replaced by its density: int_M^inf (a u + b)^-S da = (M u + b)^(1-S) / ((S-1) u)
        a_out = dens * np.sum(ui(si - 1, S - 1, M, B)) / (S - 1)
        b_out = dens * np.sum(ui(si, S - 1, A, M)) / (S - 1)
        both = dens * dens * ui(si - 1, S - 2, M, M) / ((S - 1) * (S - 2))
        total += wrow * (inside + a_out + b_out + both)
    return math.gamma(S) * math.pi**-S * float(total)

