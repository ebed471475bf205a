"""Theta series on geodesics, with truncation bounds and modular folding.

Raw series (``*_series``) sum an explicit finite set of lattice points and
return a rigorous bound for what was dropped.  The vectorized evaluators
used by the integrators first apply the theta transformation so that the
argument lies on the side of the self-dual point where the series converges
fastest, then sum with a radius that makes the dropped part negligible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..errors import DomainError, InvalidInput
from .fields import NumberFieldSpec, lattice_norms

_EXP_CUT = 45.0  # e^-45 ~ 3e-20: terms beyond this are invisible in double precision


@dataclass(frozen=True)
class TruncationPolicy:
    """``radius=None`` picks the lattice radius automatically and folds theta."""

    radius: float | None = None
    t_min: float = 1e-4
    t_max: float = 50.0
    report_tails: bool = True

    def __post_init__(self) -> None:
        if self.radius is not None and not self.radius > 0:
            raise InvalidInput("radius must be positive")
        if not (0 < self.t_min < self.t_max):
            raise InvalidInput("need 0 < t_min < t_max")

    def as_dict(self) -> dict:
        return {"radius": self.radius, "t_min": self.t_min, "t_max": self.t_max}


def _positive(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any(~(t > 0)):
        raise DomainError("theta needs t > 0")
    return t


# --- rational ----------------------------------------------------------------------


def theta_rational_series(t: float, R: float) -> tuple[float, float]:
    """``sum_{|n| <= R} exp(-pi n^2 t)`` and a bound on the omitted terms."""
    (t,) = np.atleast_1d(_positive(t))
    N = int(math.floor(R))
    n = np.arange(1, N + 1)
    val = 1.0 + 2.0 * float(np.sum(np.exp(-math.pi * n * n * t)))
    n0 = N + 1
    tail = 2 * math.exp(-math.pi * n0 * n0 * t) / (1 - math.exp(-math.pi * (2 * n0 + 1) * t))
    return val, tail


def _theta_minus_one_q_direct(t: np.ndarray) -> np.ndarray:
    """``theta(t) - 1`` by the series; accurate for ``t >= 1``."""
    tmin = float(np.min(t)) if t.size else 1.0
    N = max(1, int(math.ceil(math.sqrt(_EXP_CUT / (math.pi * tmin)))))
    n = np.arange(1, N + 1, dtype=float)
    return 2.0 * np.exp(-math.pi * np.multiply.outer(t, n * n)).sum(axis=-1)


def theta_minus_one_rational(t) -> np.ndarray:
    """``theta(t) - 1``, folded through ``theta(t) = t^(-1/2) theta(1/t)``."""
    t = _positive(t)
    out = np.empty_like(t)
    big = t >= 1
    out[big] = _theta_minus_one_q_direct(t[big])
    s = t[~big]
    out[~big] = (1.0 + _theta_minus_one_q_direct(1.0 / s)) / np.sqrt(s) - 1.0
    return out


def theta_rational(t: float, trunc: TruncationPolicy | None = None) -> float:
    """Jacobi theta at ``z = i t``."""
    trunc = trunc or TruncationPolicy()
    if trunc.radius is not None:
        return theta_rational_series(t, trunc.radius)[0]
    return float(1.0 + theta_minus_one_rational(np.array([t]))[0])


# --- imaginary quadratic ---------------------------------------------------------------


def _imag_self_dual(K: NumberFieldSpec) -> float:
    return 2.0 / math.sqrt(abs(K.discriminant))


def theta_imag_series(t: float, K: NumberFieldSpec, R: float) -> tuple[float, float]:
    """``sum_{N(alpha) <= R^2} exp(-pi N(alpha) t)`` and a tail bound."""
    if K.kind != "imag_quadratic":
        raise InvalidInput(f"{K.name} is not imaginary quadratic")
    (t,) = np.atleast_1d(_positive(t))
    M = int(math.floor(R * R))
    r = lattice_norms(K, M)
    m = np.arange(M + 1)
    val = float(np.sum(r * np.exp(-math.pi * m * t)))
    # r(m) <= w * d(m) <= w * m for m >= 1;  sum_{m > M} m q^m <= (M+1) q^(M+1) / (1-q)^2
    q = math.exp(-math.pi * t)
    tail = K.roots_of_unity * (M + 1) * q ** (M + 1) / (1 - q) ** 2
    return val, tail


@lru_cache(maxsize=16)
def _imag_counts(D: int) -> np.ndarray:
    K = NumberFieldSpec.quadratic(D)
    M = int(math.ceil(_EXP_CUT / (math.pi * _imag_self_dual(K)))) + 1
    return lattice_norms(K, M)


def theta_minus_one_imag(t, K: NumberFieldSpec) -> np.ndarray:
    """``theta_K(t) - 1`` with ``theta_K(t) = (2 / (sqrt|d| t)) theta_K(4 / (|d| t))``."""
    if K.kind != "imag_quadratic":
        raise InvalidInput(f"{K.name} is not imaginary quadratic")
    t = _positive(t)
    r = _imag_counts(K.D)
    m = np.arange(1, len(r), dtype=float)
    rr = r[1:].astype(float)
    absd = abs(K.discriminant)
    star = _imag_self_dual(K)

    def direct(x):
        return np.exp(-math.pi * np.multiply.outer(x, m)) @ rr

    out = np.empty_like(t)
    big = t >= star
    out[big] = direct(t[big])
    s = t[~big]
    out[~big] = 2.0 / (math.sqrt(absd) * s) * (1.0 + direct(4.0 / (absd * s))) - 1.0
    return out


def theta_imag_quadratic(t: float, K: NumberFieldSpec, trunc: TruncationPolicy | None = None) -> float:
    """``theta_K(i t) = sum_{alpha in O_K} exp(-pi N(alpha) t)``."""
    trunc = trunc or TruncationPolicy()
    if trunc.radius is not None:
        return theta_imag_series(t, K, trunc.radius)[0]
    return float(1.0 + theta_minus_one_imag(np.array([t]), K)[0])


# --- real quadratic -------------------------------------------------------------------


def _ellipse_points(K: NumberFieldSpec, M: float, xs: tuple[float, float]) -> tuple[np.ndarray, np.ndarray]:
    """Embeddings of all alpha with ``a1^2 e^x + a2^2 e^-x <= M`` for some x in ``[xs[0], xs[1]]``."""
    lo, hi = xs
    r1 = math.sqrt(M * math.exp(-lo))  # largest |alpha_1|
    r2 = math.sqrt(M * math.exp(hi))  # largest |alpha_2|
    bmax = int((r1 + r2) / K.omega_gap) + 1
    w1 = K.real_embeddings(0, 1)[0]
    bs = np.arange(-bmax, bmax + 1)
    amax = int(r1 + bmax * abs(float(w1))) + 2
    a, b = np.meshgrid(np.arange(-amax, amax + 1), bs, indexing="ij")
    a1, a2 = K.real_embeddings(a.ravel(), b.ravel())
    ok = np.abs(a1) <= r1 + 1e-9
    ok &= np.abs(a2) <= r2 + 1e-9
    a1, a2 = a1[ok], a2[ok]
    keep = np.minimum(a1 * a1 * math.exp(lo), a1 * a1 * math.exp(hi)) + np.minimum(
        a2 * a2 * math.exp(-lo), a2 * a2 * math.exp(-hi)
    ) <= M
    nz = (a1 != 0) | (a2 != 0)
    sel = keep & nz
    return a1[sel], a2[sel]


def theta_real_series(t: float, x: float, K: NumberFieldSpec, R: float) -> tuple[float, float]:
    """``sum over alpha with a1^2 e^x + a2^2 e^-x <= R^2`` and an area-comparison tail bound."""
    if K.kind != "real_quadratic":
        raise InvalidInput(f"{K.name} is not real quadratic")
    (t,) = np.atleast_1d(_positive(t))
    M = R * R
    a1, a2 = _ellipse_points(K, M, (x, x))
    Q = a1 * a1 * math.exp(x) + a2 * a2 * math.exp(-x)
    val = 1.0 + float(np.sum(np.exp(-math.pi * t * Q)))
    # lattice points with Q <= r: at most pi (sqrt r + rho)^2 / covol, rho = longest basis vector
    covol = math.sqrt(K.discriminant)
    w1, w2 = K.real_embeddings(0, 1)
    rho = max(math.sqrt(math.exp(x) + math.exp(-x)), math.sqrt(float(w1) ** 2 * math.exp(x) + float(w2) ** 2 * math.exp(-x)))
    tail = float((math.pi / covol) * (1 + rho / math.sqrt(M)) ** 2 * math.exp(-math.pi * t * M) / (math.pi * t))
    return val, tail


class RealTheta:
    """Vectorized ``theta_K(t, x) - 1`` for x in a fixed window.

    ``theta_K(t, x) = (1 / (sqrt(d) t)) theta_K(1 / (d t), -x)`` folds
    ``t < 1/sqrt(d)`` onto the rapidly converging side.  Lattice points are
    enumerated per x-bin so wide windows stay cheap.
    """

    BIN = 0.25

    def __init__(self, K: NumberFieldSpec, x_window: tuple[float, float]):
        if K.kind != "real_quadratic":
            raise InvalidInput(f"{K.name} is not real quadratic")
        self.K = K
        self.d = float(K.discriminant)
        self.star = 1.0 / math.sqrt(self.d)
        lo, hi = x_window
        self.M = _EXP_CUT / (math.pi * self.star)
        self.lo = min(lo, -hi)
        self.hi = max(hi, -lo)
        self._bins: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    def _points(self, b: int) -> tuple[np.ndarray, np.ndarray]:
        if b not in self._bins:
            a1, a2 = _ellipse_points(self.K, self.M, (self.lo + b * self.BIN, self.lo + (b + 1) * self.BIN))
            self._bins[b] = (a1 * a1, a2 * a2)
        return self._bins[b]

    def _direct(self, t: np.ndarray, x: np.ndarray) -> np.ndarray:
        out = np.zeros(t.shape)
        if not t.size:
            return out
        if np.any(x < self.lo - 1e-12) or np.any(x > self.hi + 1e-12):
            raise InvalidInput("x outside the window this theta evaluator was built for")
        nb = max(1, math.ceil((self.hi - self.lo) / self.BIN - 1e-9))
        idx = np.clip(((x - self.lo) / self.BIN).astype(int), 0, nb - 1)
        for b in np.unique(idx):
            sel = idx == b
            s1, s2 = self._points(int(b))
            ex = np.exp(x[sel])
            tt = t[sel]
            acc = np.zeros(tt.shape)
            for k in range(0, len(s1), 256):
                Q = np.multiply.outer(ex, s1[k : k + 256]) + np.multiply.outer(1.0 / ex, s2[k : k + 256])
                acc += np.exp(-math.pi * tt[..., None] * Q).sum(axis=-1)
            out[sel] = acc
        return out

    def __call__(self, t, x) -> np.ndarray:
        t = _positive(t)
        t, x = np.broadcast_arrays(t, np.asarray(x, dtype=float))
        out = np.empty(t.shape)
        big = t >= self.star
        out[big] = self._direct(t[big], x[big])
        s = t[~big]
        out[~big] = (1.0 + self._direct(1.0 / (self.d * s), -x[~big])) / (math.sqrt(self.d) * s) - 1.0
        return out


def theta_real_quadratic(
    t: float, x: float, K: NumberFieldSpec, trunc: TruncationPolicy | None = None
) -> float:
    """``theta_K(i t e^x, i t e^-x)``."""
    trunc = trunc or TruncationPolicy()
    if trunc.radius is not None:
        return theta_real_series(t, x, K, trunc.radius)[0]
    return float(1.0 + RealTheta(K, (x, x))(np.array([t]), np.array([x]))[0])
