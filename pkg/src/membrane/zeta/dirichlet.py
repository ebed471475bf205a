"""Dirichlet-series oracles: ideal counts, Riemann zeta, quadratic L-values."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import zeta as hurwitz

from ..errors import DomainError
from .fields import NumberFieldSpec


@dataclass(frozen=True)
class SeriesValue:
    value: float
    tail_bound: float
    terms: int


def _spf(n: int) -> np.ndarray:
    """Smallest prime factor sieve."""
    spf = np.zeros(n + 1, dtype=np.int64)
    for p in range(2, n + 1):
        if spf[p] == 0:
            spf[p::p][spf[p::p] == 0] = p
    return spf


@lru_cache(maxsize=8)
def ideal_counts(D: int, kind: str, n_max: int) -> np.ndarray:
    """``a[n]`` = number of ideals of norm ``n`` (multiplicative, from prime splitting)."""
    K = NumberFieldSpec(kind, D)
    a = np.zeros(n_max + 1, dtype=np.int64)
    a[1] = 1
    if n_max < 2:
        return a
    spf = _spf(n_max)
    chi = {}
    for n in range(2, n_max + 1):
        p = int(spf[n])
        m, k = n, 0
        while m % p == 0:
            m //= p
            k += 1
        if p not in chi:
            chi[p] = K.chi(p)
        c = chi[p]
        if kind == "rational":
            local = 1
        elif c == 1:
            local = k + 1  # split
        elif c == -1:
            local = 1 if k % 2 == 0 else 0  # inert
        else:
            local = 1  # ramified
        a[n] = local * a[m]
    a.setflags(write=False)
    return a


def dedekind_zeta_oracle(K: NumberFieldSpec, s: float, n_max: int = 200_000) -> SeriesValue:
    """``sum_{n <= n_max} a_n n^-s`` plus the averaged tail, with a bound on the tail.

    ``a_n`` has mean value ``L(1, chi)`` (``1`` for Q), so the tail is
    estimated by ``res * n_max^(1-s) / (s-1)``; the bound uses
    ``a_n <= d(n)`` summed by parts.
    """
    if not s > 1:
        raise DomainError("the Dirichlet series converges only for s > 1")
    a = ideal_counts(K.D, K.kind, n_max)
    n = np.arange(1, n_max + 1, dtype=float)
    head = float(np.sum(a[1:] * n**-s))
    res = 1.0 if K.kind == "rational" else quadratic_L(K, 1.0)
    N = float(n_max)
    est = res * N ** (1 - s) / (s - 1)
    bound = s * (N ** (1 - s) * (1 + math.log(N)) / (s - 1) + N ** (1 - s) / (s - 1) ** 2)
    return SeriesValue(head + est, bound, n_max)


def riemann_zeta(s: float, n_terms: int = 64) -> float:
    """``zeta(s)`` for real ``s > 1`` by Euler-Maclaurin after ``n_terms`` terms."""
    if not s > 1:
        raise DomainError("zeta(s) series needs s > 1")
    N = n_terms
    head = math.fsum(k**-s for k in range(1, N))
    # f(x) = x^-s; tail = int_N^inf f + f(N)/2 - sum B_2k/(2k)! f^(2k-1)(N)
    tail = N ** (1 - s) / (s - 1) + 0.5 * N**-s
    bern = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66)
    fact, rising = 1.0, 1.0
    for k, b in enumerate(bern, start=1):
        fact *= (2 * k - 1) * (2 * k)
        rising = math.prod(s + j for j in range(2 * k - 1))
        tail += b / fact * rising * N ** (-s - 2 * k + 1)
    return head + tail


def quadratic_L(K: NumberFieldSpec, s: float) -> float:
    """``L(s, chi_d) = |d|^-s sum_{a mod |d|} chi(a) zeta(s, a/|d|)``; at ``s = 1`` by the class number formula."""
    d = K.discriminant
    q = abs(d)
    if s == 1:
        if d < 0:
            return 2 * math.pi / (K.roots_of_unity * math.sqrt(q))
        return 2 * math.log(K.unit_embeddings[0]) / math.sqrt(q)
    if not s > 1:
        raise DomainError("L-series evaluation implemented for s > 1")
    return math.fsum(K.chi(a) * float(hurwitz(s, a / q)) for a in range(1, q + 1)) * q**-s


def dedekind_zeta_convolution(K: NumberFieldSpec, s: float) -> float:
    """Second route: ``zeta_K = zeta * L(chi)``."""
    if K.kind == "rational":
        return riemann_zeta(s)
    return riemann_zeta(s) * quadratic_L(K, s)


def catalan() -> float:
    """Catalan's constant ``L(2, chi_-4)``."""
    return quadratic_L(NumberFieldSpec.quadratic(-1), 2.0)
