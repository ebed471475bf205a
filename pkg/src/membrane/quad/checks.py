"""Identity checks tying the word algebra to iterated integrals."""

from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction
from typing import Sequence

import numpy as np

from .. import hopf
from ..errors import InvalidInput
from ..hopf import FormalSeries, Monomial, classes
from ..perms import Permutation, concat_perm, shuffles
from ..report import CheckReport
from .context import Grid2x2, MembraneRealization
from .forms import Form2, QuadratureConfig, Rectangle
from .integrate import integrate
from .membranes import Membrane, TargetForm, boundary_mismatch, glue_horizontal, glue_vertical


def _perm(p) -> Permutation:
    return p if isinstance(p, Permutation) else Permutation(tuple(p))


def _value(forms, sx, sy, xcuts, ycuts, cfg, **kw):
    return integrate(forms, _perm(sx).images, _perm(sy).images, xcuts, ycuts, cfg, **kw).value


def shuffle_relation_check(
    forms1: Sequence[Form2],
    sx1,
    sy1,
    forms2: Sequence[Form2],
    sx2,
    sy2,
    A: Rectangle = Rectangle.unit(),
    cfg: QuadratureConfig = QuadratureConfig(method="exact"),
) -> CheckReport:
    """``I(a) I(b) = sum over (rho1, rho2) in shuffles x shuffles of I(ab; rho1, rho2)``."""
    xc, yc = (A.ax, A.bx), (A.ay, A.by)
    lhs = _value(forms1, sx1, sy1, xc, yc, cfg) * _value(forms2, sx2, sy2, xc, yc, cfg)
    both = list(forms1) + list(forms2)
    rhs = 0
    for r1 in shuffles(_perm(sx1), _perm(sx2)):
        for r2 in shuffles(_perm(sy1), _perm(sy2)):
            rhs += _value(both, r1, r2, xc, yc, cfg)
    dev = abs(lhs - rhs)
    tol = 0.0 if cfg.method == "exact" else cfg.tolerance
    return CheckReport("shuffle-relation", dev <= tol, dev, tol, 1, {"lhs": lhs, "rhs": rhs})


def lemma21_check(forms, sx, sy, A: Rectangle, B: Rectangle, cfg=QuadratureConfig(method="exact")) -> CheckReport:
    """``sum_i I^i = I`` over the glued rectangle."""
    if not A.adjacent_right(B):
        raise InvalidInput("B must share A's right face")
    n = len(forms)
    parts = [_value(forms, sx, sy, (A.ax, A.bx, B.bx), (A.ay, A.by), cfg, xsplit=i) for i in range(n + 1)]
    whole = _value(forms, sx, sy, (A.ax, B.bx), (A.ay, A.by), cfg)
    dev = abs(sum(parts) - whole)
    tol = 0.0 if cfg.method == "exact" else cfg.tolerance
    return CheckReport("lemma2.1", dev <= tol, dev, tol, n + 1, {"parts": parts, "whole": whole})


def lemma22_check(
    forms_a, sx_a, sy_a, forms_b, sx_b, sy_b, A: Rectangle, B: Rectangle, cfg=QuadratureConfig(method="exact")
) -> CheckReport:
    """``I_A(a) I_B(b) = sum_{rho2} I^m(ab; (sx_a, sx_b), rho2)``."""
    if not A.adjacent_right(B):
        raise InvalidInput("B must share A's right face")
    m = len(forms_a)
    lhs = _value(forms_a, sx_a, sy_a, (A.ax, A.bx), (A.ay, A.by), cfg) * _value(
        forms_b, sx_b, sy_b, (B.ax, B.bx), (B.ay, B.by), cfg
    )
    both = list(forms_a) + list(forms_b)
    r1 = concat_perm(_perm(sx_a), _perm(sx_b))
    rhs = 0
    for r2 in shuffles(_perm(sy_a), _perm(sy_b)):
        rhs += _value(both, r1, r2, (A.ax, A.bx, B.bx), (A.ay, A.by), cfg, xsplit=m)
    dev = abs(lhs - rhs)
    tol = 0.0 if cfg.method == "exact" else cfg.tolerance
    return CheckReport("lemma2.2", dev <= tol, dev, tol, 1, {"lhs": lhs, "rhs": rhs})


def _realize(s, f):
    return sum((c * f(m) for m, c in s), 0)


def verify_interchange(k: int, N: int, grid: Grid2x2 | None = None, tol: float = 0.0) -> CheckReport:
    """Interchange law for a 2x2 grid, formally and through its realization.

    Numerically: every class on the big rectangle splits as the sum of its
    doubly indexed pieces, and the horizontal/vertical products of column/row
    generators realize to products of values (the cross-product identity on
    each side of the law).
    """
    lhs, rhs = hopf.interchange_series(k, N)
    formal = lhs == rhs and all(c == 1 for _, c in lhs)
    worst = 0
    checked = 0
    if grid is not None:
        one = lambda t: 1 if t.degree == 0 else grid.whole(t)  # noqa: E731
        for n in range(1, N + 1):
            for P in classes(k, n):
                pieces = hopf.embed_i2(hopf.embed_i(P))
                worst = max(worst, abs(grid.whole(P) - _realize(pieces, one)))
                checked += 1
        for n in range(1, N + 1):
            for m in range(n + 1):
                for c in classes(k, m):
                    for d in classes(k, n - m):
                        for cs, ds in _split_versions(c, d, "y"):
                            img = FormalSeries(dict(hopf._times1_mono(cs, ds)), n)
                            prod = _val(grid.left_col, cs) * _val(grid.right_col, ds)
                            worst = max(worst, abs(prod - _realize(img, one)))
                            checked += 1
                        for cs, ds in _split_versions(c, d, "x"):
                            img = FormalSeries(dict(hopf._times2_mono(cs, ds)), n)
                            prod = _val(grid.bottom_row, cs) * _val(grid.top_row, ds)
                            worst = max(worst, abs(prod - _realize(img, one)))
                            checked += 1
    return CheckReport("interchange", formal and worst <= tol, worst, tol, checked, {"formal": formal})


def _val(real, m):
    return 1 if m.degree == 0 else real(m)


def _split_versions(c: Monomial, d: Monomial, axis: str):
    for i in range(c.degree + 1):
        for j in range(d.degree + 1):
            if axis == "y":
                yield Monomial(c.word, c.sigma2, None, i), Monomial(d.word, d.sigma2, None, j)
            else:
                yield Monomial(c.word, c.sigma2, i, None), Monomial(d.word, d.sigma2, j, None)


# --- membranes ----------------------------------------------------------------------


def homotopy_invariance_check(
    m0: Membrane,
    m1: Membrane,
    forms: Sequence[TargetForm],
    sx,
    sy,
    cfg: QuadratureConfig = QuadratureConfig(points=10, cells=2),
    boundary_tol: float = 1e-9,
    tol: float | None = None,
) -> CheckReport:
    """Compare the pulled-back iterated integral along two membranes with a common boundary."""
    gap = boundary_mismatch(m0, m1)
    if gap > boundary_tol:
        raise InvalidInput(f"membranes differ on the boundary by {gap:.3g}")
    tol = cfg.tolerance if tol is None else tol
    n = len(forms)
    word = Monomial(tuple(range(1, n + 1)), tuple(range(1, n + 1)))
    vals = []
    for m in (m0, m1):
        R = MembraneRealization(m, forms, cfg)
        sxi, syi = _perm(sx).images, _perm(sy).images
        vals.append(
            integrate(R.forms, sxi, syi, R.xcuts, R.ycuts, cfg, xbreaks=R.xbreaks, ybreaks=R.ybreaks).value
        )
    dev = abs(vals[0] - vals[1])
    return CheckReport(
        "homotopy", dev <= tol, dev, tol, 1, {"values": vals, "boundary_gap": gap, "n": word.degree}
    )


def homotopy_suite(
    m0: Membrane,
    m1: Membrane,
    forms: Sequence[TargetForm],
    n: int = 2,
    cfg: QuadratureConfig = QuadratureConfig(points=10, cells=2),
    tol: float = 1e-6,
) -> CheckReport:
    """Every word of length ``n`` in ``forms`` and every pair of orderings."""
    gap = boundary_mismatch(m0, m1)
    if gap > 1e-9:
        raise InvalidInput(f"membranes differ on the boundary by {gap:.3g}")
    R0 = MembraneRealization(m0, forms, cfg)
    R1 = MembraneRealization(m1, forms, cfg)
    worst, where = 0.0, None
    rows = []
    for word in itertools.product(range(len(forms)), repeat=n):
        for sx in itertools.permutations(range(1, n + 1)):
            for sy in itertools.permutations(range(1, n + 1)):
                v = []
                for R in (R0, R1):
                    v.append(
                        integrate(
                            [R.forms[a] for a in word], sx, sy, R.xcuts, R.ycuts, cfg,
                            xbreaks=R.xbreaks, ybreaks=R.ybreaks,
                        ).value
                    )
                d = abs(v[0] - v[1])
                rows.append({"word": list(word), "sx": list(sx), "sy": list(sy), "m0": v[0], "m1": v[1]})
                if d > worst:
                    worst, where = d, rows[-1]
    return CheckReport("homotopy", worst <= tol, worst, tol, len(rows), {"worst": where, "rows": rows})


def composition_identity_check(
    d3: Membrane,
    d1: Membrane,
    d2: Membrane,
    d0: Membrane,
    forms: Sequence[TargetForm],
    N: int,
    cfg: QuadratureConfig = QuadratureConfig(points=10, cells=2),
    tol: float = 1e-5,
) -> CheckReport:
    """``J_{d3 x1 d1} = J_{d2 x2 d0}`` coefficientwise through degree ``N``.

    ``d3 | d1`` are glued horizontally and ``d2`` (bottom) / ``d0`` (top)
    vertically; both composites must have the same domain and boundary.
    Each composite's coefficient on a class ``P`` is assembled from its
    indexed pieces, ``sum_j I^j(P)``, which is the coefficient that the
    horizontal (resp. vertical) product of the pieces' series carries.
    """
    H = glue_horizontal(d3, d1)
    V = glue_vertical(d2, d0)
    if H.domain != V.domain:
        raise InvalidInput("the two composites live on different domains")
    gap = boundary_mismatch(H, V)
    if gap > 1e-9:
        raise InvalidInput(f"the two composites differ on the boundary by {gap:.3g}")
    RH = MembraneRealization(H, forms, cfg, xcut=float(d3.domain.bx))
    RV = MembraneRealization(V, forms, cfg, ycut=float(d2.domain.by))
    k = len(forms)
    worst = 0.0
    per_degree: dict[int, float] = defaultdict(float)
    checked = 0
    for n in range(1, N + 1):
        for P in classes(k, n):
            h = sum(RH(t) for t, _ in hopf.embed_i(P))
            v = sum(RV(t) for t, _ in hopf.embed_i2(P))
            dev = abs(h - v)
            per_degree[n] = max(per_degree[n], dev)
            worst = max(worst, dev)
            checked += 1
    return CheckReport(
        "composition",
        worst <= tol,
        worst,
        tol,
        checked,
        {"per_degree": dict(per_degree), "boundary_gap": gap},
    )
