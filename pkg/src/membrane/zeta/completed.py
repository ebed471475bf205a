"""Completed and multiple completed (Dedekind) zeta values as theta integrals.

All integrals are taken in ``u = log t``.  Near ``t = 0`` the folded theta
behaves like ``c t^-kappa``, so the integrand decays exponentially as
``u -> -inf``; the single-variable evaluator adds the exact integral of
that asymptotic form below ``t_min``, the multiple evaluators extend the
grid down to a floor chosen from the same asymptotics.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..errors import AccuracyError, DomainError, InvalidInput
from ..perms import Permutation
from ..quad.forms import QuadratureConfig, Rectangle
from ..quad.integrate import contract
from ..quad.membranes import Membrane
from ..quad.rules import chain_rule, ordered_rule
from .fields import NumberFieldSpec
from .theta import (
    RealTheta,
    TruncationPolicy,
    theta_imag_series,
    theta_minus_one_imag,
    theta_minus_one_rational,
    theta_rational_series,
)

NORMALIZATION = "s/2"
_FLOOR_TARGET = 1e-14


@dataclass
class ZetaResult:
    value: float
    est_error: float
    tail_bounds: dict[str, float]
    field: str
    exponents: list[float]
    permutations: dict[str, list[int]] = field(default_factory=dict)
    normalization: str = NORMALIZATION
    method: str = "gauss"
    seed: int | None = None
    runtime_ms: float | None = None
    notes: dict = field(default_factory=dict)

    def as_dict(self, timing: bool = False) -> dict:
        out = {
            "value": self.value,
            "est_error": self.est_error,
            "tail_bounds": self.tail_bounds,
            "normalization": self.normalization,
            "field": self.field,
            "exponents": self.exponents,
            "permutations": self.permutations,
            "method": self.method,
            "seed": self.seed,
        }
        if self.notes:
            out["notes"] = self.notes
        if timing:
            out["runtime_ms"] = self.runtime_ms
        return out


@dataclass(frozen=True)
class ZetaRequest:
    field: NumberFieldSpec
    exponents: tuple[float, ...]
    sigma1: tuple[int, ...] | None = None
    sigma2: tuple[int, ...] | None = None
    truncation: TruncationPolicy = TruncationPolicy()
    quadrature: QuadratureConfig = QuadratureConfig()

    def __post_init__(self) -> None:
        if not self.exponents:
            raise InvalidInput("at least one exponent is required")


# --- per-field data -----------------------------------------------------------------


@dataclass(frozen=True)
class _PathData:
    F: Callable[[np.ndarray], np.ndarray]  # theta - 1 on the geodesic
    weight: float  # exponent e = s * weight
    c: float  # theta - 1 ~ c t^-kappa - 1 as t -> 0
    kappa: float
    series: Callable[[float, float], tuple[float, float]]


def _path_data(K: NumberFieldSpec) -> _PathData:
    if K.kind == "rational":
        return _PathData(theta_minus_one_rational, 0.5, 1.0, 0.5, theta_rational_series)
    if K.kind == "imag_quadratic":
        c = 2.0 / math.sqrt(abs(K.discriminant))
        return _PathData(
            lambda t: theta_minus_one_imag(t, K), 1.0, c, 1.0, lambda t, R: theta_imag_series(t, K, R)
        )
    raise InvalidInput(f"{K.name}: path integrals are defined for Q and imaginary quadratic fields")


def _check_exponents(exps: Sequence[float], floor: float) -> None:
    for s in exps:
        if not (isinstance(s, (int, float)) and math.isfinite(s) and s > floor):
            raise DomainError(f"exponent {s} outside the convergence range s > {floor:g}")


def _fine_edges(lo: float, hi: float, width: float) -> list[float]:
    n = max(1, int(math.ceil((hi - lo) / width)))
    return list(np.linspace(lo, hi, n + 1))


def _graded_edges(floor: float, lo: float, first: float = 0.5, cap: float = 4.0) -> list[float]:
    """Cells below ``lo`` doubling in width (capped) until ``floor``."""
    edges = [lo]
    w = first
    while edges[-1] > floor:
        edges.append(max(floor, edges[-1] - w))
        w = min(2 * w, cap)
    return edges[::-1]


def _F_values(pd: _PathData, trunc: TruncationPolicy, t: np.ndarray) -> np.ndarray:
    if trunc.radius is None:
        return pd.F(t)
    return np.array([pd.series(float(x), trunc.radius)[0] - 1.0 for x in t])


def _finish(value, err, tails, tol, **kw) -> ZetaResult:
    total = sum(tails.values())
    if total > tol:
        raise AccuracyError(
            f"truncation tails {total:.3g} exceed tolerance {tol:.3g}",
            {"tail_bounds": tails, "value": value},
        )
    return ZetaResult(value=value, est_error=err + total, tail_bounds=tails, **kw)


# --- single completed zeta -------------------------------------------------------------


def completed_zeta(
    K: NumberFieldSpec,
    s: float,
    trunc: TruncationPolicy = TruncationPolicy(),
    cfg: QuadratureConfig = QuadratureConfig(),
) -> ZetaResult:
    """``int_0^inf (theta - 1)(t) t^e dt / t`` with ``e = s/2`` (Q) or ``s`` (imaginary quadratic)."""
    t0 = time.perf_counter()
    pd = _path_data(K)
    _check_exponents([s], 1.0)
    e = pd.weight * s
    ulo, uhi = math.log(trunc.t_min), math.log(trunc.t_max)

    def g(u):
        return _F_values(pd, trunc, np.exp(u)) * np.exp(e * u)

    seed = None
    if cfg.method == "mc":
        rng = np.random.default_rng(cfg.seed)
        u = rng.uniform(ulo, uhi, cfg.samples)
        v = g(u) * (uhi - ulo)
        body, err = float(v.mean()), float(v.std(ddof=1) / math.sqrt(cfg.samples))
        seed = cfg.seed
    else:
        edges = _fine_edges(ulo, uhi, 0.25)
        body = _gl(g, edges, cfg.points)
        err = abs(body - _gl(g, edges, max(2, cfg.points - 2)))
    # exact integral of the small-t asymptotic form c t^(e-kappa) - t^e below t_min
    a = e - pd.kappa
    lower = pd.c * trunc.t_min**a / a - trunc.t_min**e / e
    tails = _path_tails(pd, trunc, [e])
    return _finish(
        body + lower,
        err,
        tails,
        max(cfg.tolerance, 1e-12),
        field=K.name,
        exponents=[float(s)],
        method=cfg.method,
        seed=seed,
        runtime_ms=1e3 * (time.perf_counter() - t0),
    )


def _gl(g, edges: Sequence[float], p: int) -> float:
    x, w = np.polynomial.legendre.leggauss(p)
    a = np.asarray(edges[:-1])
    b = np.asarray(edges[1:])
    u = ((b - a)[:, None] * (x[None, :] + 1) / 2 + a[:, None]).ravel()
    wt = ((b - a)[:, None] / 2 * w[None, :]).ravel()
    return float(g(u) @ wt)


def _path_tails(pd: _PathData, trunc: TruncationPolicy, es: Sequence[float]) -> dict[str, float]:
    tmax, tmin = trunc.t_max, trunc.t_min
    Fmax = float(pd.F(np.array([tmax]))[0])
    emax = max(es)
    upper = Fmax * tmax ** (emax - 1) / max(math.pi - max(emax - 1, 0) / tmax, 1e-3)
    # neglected part of the asymptotic form below t_min: c t^-kappa (theta(dual t) - 1)
    lam = {0.5: 1.0}.get(pd.kappa, pd.c * pd.c)
    a = min(es) - pd.kappa
    lower = 2.0 * pd.c * math.exp(-math.pi * lam / tmin) * tmin**a / a * 6
    lattice = 0.0
    if trunc.radius is not None:
        _, bound = pd.series(tmin, trunc.radius)
        lattice = bound * (tmax**emax - tmin**emax) / emax if emax > 0 else bound
    return {"upper": upper, "lower": lower, "lattice": lattice}


# --- multiple completed zeta along the geodesic ----------------------------------------


def _floor(smallest_rate: float, coeff: float, others: float) -> float:
    """``u`` below which the lower remainder ``coeff e^(rate u) / rate * others`` drops under target."""
    return math.log(_FLOOR_TARGET * smallest_rate / max(coeff * others, 1e-300)) / smallest_rate


def multiple_completed_zeta_path(
    K: NumberFieldSpec,
    exponents: Sequence[float],
    trunc: TruncationPolicy = TruncationPolicy(),
    cfg: QuadratureConfig = QuadratureConfig(),
    order: Sequence[int] | None = None,
) -> ZetaResult:
    """``int over t_o(1) < ... < t_o(d)`` of ``prod (theta - 1)(t_i) t_i^(e_i) dt_i / t_i``.

    Exponent ``s_i`` belongs to ``t_i``; ``order`` defaults to the identity,
    so ``s_1`` sits on the smallest variable.
    """
    t0 = time.perf_counter()
    pd = _path_data(K)
    exps = [float(s) for s in exponents]
    _check_exponents(exps, 1.0)
    d = len(exps)
    o = tuple(order) if order is not None else tuple(range(1, d + 1))
    Permutation(o)
    if len(o) != d:
        raise InvalidInput("ordering size must match the number of exponents")
    es = [pd.weight * s for s in exps]
    first = o[0] - 1
    rate = es[first] - pd.kappa
    others = math.prod(completed_zeta(K, exps[j], trunc).value for j in range(d) if j != first)
    floor = min(_floor(rate, pd.c, others), math.log(trunc.t_min) - 1)
    ulo, uhi = math.log(trunc.t_min), math.log(trunc.t_max)
    edges = _graded_edges(floor, ulo) + _fine_edges(ulo, uhi, 0.25 if d <= 2 else 0.6)[1:]
    p = cfg.points if d <= 2 else min(cfg.points, 6)

    def run(pp: int) -> float:
        pts, w = ordered_rule(d, edges, pp)
        U = np.empty_like(pts)
        for k, v in enumerate(o):
            U[:, v - 1] = pts[:, k]
        vals = np.ones(len(w))
        for i in range(d):
            vals *= _F_values(pd, trunc, np.exp(U[:, i])) * np.exp(es[i] * U[:, i])
        return float(vals @ w)

    value = run(p)
    err = abs(value - run(max(2, p - 2)))
    tails = _path_tails(pd, trunc, es)
    tails["lower"] += _FLOOR_TARGET
    return _finish(
        value,
        err,
        tails,
        max(cfg.tolerance, 1e-12),
        field=K.name,
        exponents=exps,
        permutations={"sigma1": list(o)},
        method="gauss",
        runtime_ms=1e3 * (time.perf_counter() - t0),
    )


def path_word_integral(
    K: NumberFieldSpec,
    word: Sequence[str],
    trunc: TruncationPolicy = TruncationPolicy(),
    points: int = 8,
) -> complex:
    """Experimental: ``I_gamma`` of a word in ``(theta - 1) dz`` and ``dz`` along ``z = i t``.

    Letters are ``"theta"`` or ``"dz"``; ``dz = i dt`` on the geodesic.  The
    integral converges only when the last letter is ``"theta"``.
    """
    pd = _path_data(K)
    if not word or word[-1] != "theta":
        raise DomainError("the word integral diverges at infinity unless the last letter is theta")
    for letter in word:
        if letter not in ("theta", "dz"):
            raise InvalidInput(f"unknown letter {letter!r}")
    d = len(word)
    rate = 1.0 - pd.kappa if word[0] == "theta" else 1.0
    floor = min(math.log(_FLOOR_TARGET) / rate, math.log(trunc.t_min) - 1)
    ulo, uhi = math.log(trunc.t_min), math.log(trunc.t_max)
    edges = _graded_edges(floor, ulo) + _fine_edges(ulo, uhi, 0.5)[1:]
    pts, w = ordered_rule(d, edges, points)
    vals = np.ones(len(w))
    for i, letter in enumerate(word):
        t = np.exp(pts[:, i])
        vals *= t * (_F_values(pd, trunc, t) if letter == "theta" else 1.0)
    return complex((1j) ** d * float(vals @ w))


# --- real quadratic membrane ---------------------------------------------------------


def log_form(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``dz1/z1 ^ dz2/z2`` evaluated on tangent vectors ``a, b`` at ``p``."""
    z1, z2 = p[..., 0], p[..., 1]
    return (a[..., 0] / z1) * (b[..., 1] / z2) - (a[..., 1] / z2) * (b[..., 0] / z1)


def membrane_M(K: NumberFieldSpec, trunc: TruncationPolicy = TruncationPolicy()) -> Membrane:
    """``(t, x) -> (i t e^x, i t e^-x)`` for ``x in [0, 2 log u_1]``, ``t`` in the truncation window."""
    if K.kind != "real_quadratic":
        raise InvalidInput(f"{K.name} is not real quadratic")
    L = 2 * math.log(K.unit_embeddings[0])

    def mp(t, x):
        t, x = np.broadcast_arrays(t, x)
        return np.stack([1j * t * np.exp(x), 1j * t * np.exp(-x)], axis=-1)

    def jac(t, x):
        t, x = np.broadcast_arrays(t, x)
        dt = np.stack([1j * np.exp(x), 1j * np.exp(-x)], axis=-1)
        dx = np.stack([1j * t * np.exp(x), -1j * t * np.exp(-x)], axis=-1)
        return dt, dx

    return Membrane(
        mp,
        Rectangle(float(trunc.t_min), float(trunc.t_max), 0.0, L),
        faces={
            "bottom": "gamma_{0,1,inf}",
            "top": "gamma_{0,u^2,inf}",
            "left": "cusp 0 (t = t_min)",
            "right": "cusp inf (t = t_max)",
        },
        jacobian=jac,
        label=f"M[{K.name}]",
    )


def multiple_completed_dedekind_2d(
    K: NumberFieldSpec,
    exponents: Sequence[float],
    sigma1: Sequence[int] | None = None,
    sigma2: Sequence[int] | None = None,
    trunc: TruncationPolicy = TruncationPolicy(),
    cfg: QuadratureConfig = QuadratureConfig(),
) -> ZetaResult:
    """Iterated membrane integral over ``M^d`` with factors ``(1/2)(theta_K - 1)(-z1 z2)^(s/2) dz1/z1 ^ dz2/z2``.

    On M this factor is ``(theta_K - 1)(t, x) t^s dt/t dx``; ``sigma1``
    orders the t-coordinates, ``sigma2`` the x-coordinates.
    """
    t0 = time.perf_counter()
    if K.kind != "real_quadratic":
        raise InvalidInput(f"{K.name} is not real quadratic")
    exps = [float(s) for s in exponents]
    _check_exponents(exps, 1.0)
    d = len(exps)
    s1 = tuple(sigma1) if sigma1 is not None else tuple(range(1, d + 1))
    s2 = tuple(sigma2) if sigma2 is not None else tuple(range(1, d + 1))
    for s in (s1, s2):
        if len(s) != d:
            raise InvalidInput("permutation sizes must match the number of exponents")
        Permutation(s)
    L = 2 * math.log(K.unit_embeddings[0])
    th = RealTheta(K, (0.0, L))
    sqd = math.sqrt(K.discriminant)
    first = s1[0] - 1
    rate = exps[first] - 1.0
    # crude bound for the other factors: full single integrals
    others = math.prod(_single_membrane_bound(K, exps[j]) for j in range(d) if j != first)
    floor = min(_floor(rate, L / sqd, others), math.log(trunc.t_min) - 1)
    ulo, uhi = math.log(trunc.t_min), math.log(trunc.t_max)
    edges = _graded_edges(floor, ulo) + _fine_edges(ulo, uhi, 0.25 if d == 1 else 0.5)[1:]

    def factor(s):
        def f(u, x):
            return th(np.exp(u), x) * np.exp(s * u)

        return f

    forms = [factor(s) for s in exps]

    xcells = max(1, math.ceil(L / (0.5 if d == 1 else 1.0)))

    def run(p: int) -> float:
        pu, wu = ordered_rule(d, edges, p)
        px, wx = chain_rule(((0.0, L),) * d, p, xcells)
        U = np.empty_like(pu)
        X = np.empty_like(px)
        for k, v in enumerate(s1):
            U[:, v - 1] = pu[:, k]
        for k, v in enumerate(s2):
            X[:, v - 1] = px[:, k]
        return contract(forms, U, wu, X, wx)

    p = cfg.points
    value = run(p)
    err = abs(value - run(max(2, p - 2)))
    tmax = trunc.t_max
    upper = float(th(np.array([tmax]), np.array([0.0]))[0]) * tmax ** (max(exps) - 1) * L * others / math.pi
    tails = {"upper": upper, "lower": _FLOOR_TARGET, "lattice": 0.0}
    return _finish(
        value,
        err,
        tails,
        max(cfg.tolerance, 1e-10),
        field=K.name,
        exponents=exps,
        permutations={"sigma1": list(s1), "sigma2": list(s2)},
        method="gauss",
        runtime_ms=1e3 * (time.perf_counter() - t0),
        notes={"membrane_width": L, "unit": list(K.unit)},
    )


def _single_membrane_bound(K: NumberFieldSpec, s: float) -> float:
    """Closed form of the d = 1 membrane integral (used only to size the grid)."""
    from .dirichlet import dedekind_zeta_convolution

    return math.pi**-s * math.gamma(s / 2) ** 2 * dedekind_zeta_convolution(K, s)


def completed_oracle(K: NumberFieldSpec, s: float) -> float:
    """Closed forms through the Dirichlet series (second route: zeta * L)."""
    from .dirichlet import dedekind_zeta_convolution, riemann_zeta

    if K.kind == "rational":
        return 2 * math.pi ** (-s / 2) * math.gamma(s / 2) * riemann_zeta(s)
    z = dedekind_zeta_convolution(K, s)
    if K.kind == "imag_quadratic":
        return K.roots_of_unity * math.pi**-s * math.gamma(s) * z
    return math.pi**-s * math.gamma(s / 2) ** 2 * z
