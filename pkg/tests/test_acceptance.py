"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Tolerances and time budgets are fixed here.  Criteria 7 and 8 compare
membrane integrals that genuinely differ for the scenarios below, so they
report FAIL with the measured deviation (see README).
"""

from __future__ import annotations

import itertools
import json
import math
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from membrane import hopf
from membrane.perms import all_permutations, is_shuffle, shuffles
from membrane.quad.checks import composition_identity_check, homotopy_suite, lemma21_check, lemma22_check, shuffle_relation_check
from membrane.quad.context import HorizontalPair, rectangle_realization
from membrane.quad.forms import Form2, QuadratureConfig, Rectangle
from membrane.scenarios import TARGET_FORMS, CocycleScenario, HomotopyScenario, polynomial_forms
from membrane.zeta import (
    NumberFieldSpec,
    catalan,
    completed_zeta,
    dedekind_zeta_oracle,
    multiple_completed_dedekind_2d,
    multiple_completed_zeta_path,
    nested_path_oracle,
    unfolding_oracle,
)

EXACT = QuadratureConfig(method="exact")


@pytest.fixture
def report(capsys):
    def emit(k: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\nACCEPTANCE {k:2d} {'PASS' if ok else 'FAIL'} {detail}")

    return emit


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def _poly(rng: random.Random) -> Form2:
    terms = {(0, 0): Fraction(1)}
    for _ in range(2):
        key = (rng.randint(0, 2), rng.randint(0, 2))
        terms[key] = terms.get(key, 0) + Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return Form2.poly(terms)


def _perms(n):
    return list(itertools.permutations(range(1, n + 1)))


def test_01_shuffle_cardinality(report):
    rng = random.Random(1)

    def run():
        bad, checked = [], 0
        for total in range(0, 8):
            universe = list(all_permutations(total))
            for m in range(total + 1):
                n = total - m
                pairs = list(itertools.product(all_permutations(m), all_permutations(n)))
                if len(pairs) > 720:
                    pairs = rng.sample(pairs, 20)
                for sigma, tau in pairs:
                    checked += 1
                    if len(shuffles(sigma, tau)) != math.comb(total, m):
                        bad.append((sigma, tau))
                # full set comparison against a filter of all (m+n)! permutations
                for sigma, tau in (pairs[0], rng.choice(pairs)):
                    brute = [r for r in universe if is_shuffle(r, sigma, tau)]
                    if shuffles(sigma, tau) != sorted(brute):
                        bad.append((sigma, tau))
        return bad, checked

    (bad, checked), dt = _timed(run)
    ok = not bad and dt < 5
    report(1, ok, f"|Sh(m,n)| = C(m+n,m) on {checked} pairs with m+n <= 7, sets match brute force ({dt:.2f}s)")
    assert ok


def test_02_hopf_axioms(report):
    def run():
        mons = [m for n in range(5) for m in hopf.classes(2, n)]
        bad = sum(hopf.coassociativity_defect(m) != 0 for m in mons)
        bad += sum(hopf.counit_defect(m) != 0 for m in mons)
        bad += sum(len(hopf.antipode_defect(m, side)) != 0 for m in mons for side in ("left", "right"))
        bad += sum(hopf.bialgebra_defect(a, b) != 0 for a in mons for b in mons if a.degree + b.degree <= 4)
        return bad, len(mons)

    (bad, n), dt = _timed(run)
    ok = bad == 0 and dt < 30
    report(2, ok, f"Hopf axioms on {n} classes through degree 4, {bad} defects ({dt:.2f}s)")
    assert ok


def test_03_shuffle_relation(report):
    rng = random.Random(20240)

    def run():
        worst, checked = Fraction(0), 0
        for _ in range(20):
            for n1, n2 in ((1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 2)):
                f1 = [_poly(rng) for _ in range(n1)]
                f2 = [_poly(rng) for _ in range(n2)]
                sx1, sy1 = rng.choice(_perms(n1)), rng.choice(_perms(n1))
                sx2, sy2 = rng.choice(_perms(n2)), rng.choice(_perms(n2))
                r = shuffle_relation_check(f1, sx1, sy1, f2, sx2, sy2, cfg=EXACT)
                worst = max(worst, r.max_deviation)
                checked += 1
        return worst, checked

    (worst, checked), dt = _timed(run)
    ok = worst == 0 and dt < 30
    report(3, ok, f"shuffle relation exact on {checked} random cases, max deviation {worst} ({dt:.2f}s)")
    assert ok


def test_04_horizontal_lemmas(report):
    rng = random.Random(7)
    A, B = Rectangle(0, 1, 0, 1), Rectangle(1, 2, 0, 1)

    def run():
        worst, checked = Fraction(0), 0
        for n in range(1, 4):
            forms = [_poly(rng) for _ in range(n)]
            for sx in _perms(n):
                for sy in _perms(n):
                    worst = max(worst, lemma21_check(forms, sx, sy, A, B, EXACT).max_deviation)
                    checked += 1
        for n1, n2 in ((1, 1), (1, 2), (2, 1)):
            fa = [_poly(rng) for _ in range(n1)]
            fb = [_poly(rng) for _ in range(n2)]
            for sxa, sya in itertools.product(_perms(n1), repeat=2):
                for sxb, syb in itertools.product(_perms(n2), repeat=2):
                    worst = max(worst, lemma22_check(fa, sxa, sya, fb, sxb, syb, A, B, EXACT).max_deviation)
                    checked += 1
        return worst, checked

    (worst, checked), dt = _timed(run)
    ok = worst == 0 and dt < 10
    report(4, ok, f"horizontal gluing lemmas exact on {checked} cases ({dt:.2f}s)")
    assert ok


def test_05_horizontal_composition_theorem(report):
    ctx = HorizontalPair(polynomial_forms(2), Rectangle(0, 1, 0, 1), Rectangle(1, 2, 0, 1), EXACT)
    rep, dt = _timed(lambda: hopf.verify_thm_1_5(2, 3, ctx, 0.0))
    ok = rep.passed and rep.max_deviation == 0 and dt < 60
    report(5, ok, f"J(A) x1 J(B) = J(A|B) through degree 3, {rep.checked} coefficients ({dt:.2f}s)")
    assert ok


def test_06_group_like(report):
    def run():
        real = rectangle_realization(polynomial_forms(2), Rectangle.unit(), EXACT)
        return hopf.group_like_check(hopf.truncated_J(2, 3, real), 3, real, 0.0)

    rep, dt = _timed(run)
    ok = rep.passed and rep.max_deviation == 0 and dt < 30
    report(6, ok, f"Delta J = J (x) J through degree 3, {rep.checked} terms ({dt:.2f}s)")
    assert ok


def test_07_homotopy_invariance(report):
    s = HomotopyScenario()
    m0, m1 = s.membranes()
    rep = homotopy_suite(m0, m1, TARGET_FORMS, s.n, s.quadrature, s.tolerance)
    dev = float(rep.max_deviation)
    report(7, rep.passed, f"boundary-fixing bump eps={s.eps}: max deviation {dev:.4e} vs tolerance {s.tolerance:g} (eps/360 = {s.eps / 360:.4e})")
    assert rep.passed, f"membrane integrals differ by {dev:.4e} > {s.tolerance:g}"


def test_08_composition_cocycle(report):
    s = CocycleScenario()
    rep = composition_identity_check(*s.pieces(), TARGET_FORMS, s.degree, s.quadrature, s.tolerance)
    dev = float(rep.max_deviation)
    report(8, rep.passed, f"perturbed 2x2 composite eps={s.eps}: max deviation {dev:.4e} vs tolerance {s.tolerance:g}")
    assert rep.passed, f"H and V composites differ by {dev:.4e} > {s.tolerance:g}"


def test_09_completed_riemann(report):
    Q = NumberFieldSpec.parse("Q")
    v2 = completed_zeta(Q, 2.0).value
    v4 = completed_zeta(Q, 4.0).value
    e2, e4 = abs(v2 - math.pi / 3), abs(v4 - math.pi**2 / 45)
    ok = e2 < 1e-8 and e4 < 1e-8
    report(9, ok, f"completed zeta(2), zeta(4) errors {e2:.1e}, {e4:.1e}")
    assert ok


def test_10_gaussian_field(report):
    v = completed_zeta(NumberFieldSpec.parse("Qi"), 2.0).value
    err = abs(v - 2 * catalan() / 3)
    ok = err < 1e-6
    report(10, ok, f"Q(i) at s=2: {v:.12f}, error vs (2/3)G {err:.1e}")
    assert ok


def test_11_real_quadratic_membrane(report):
    K = NumberFieldSpec.parse("Q:sqrt5")
    single = multiple_completed_dedekind_2d(K, (2.0,)).value
    ref = dedekind_zeta_oracle(K, 2.0).value / math.pi**2
    e_ref = abs(single - ref)
    e1 = abs(single - unfolding_oracle(K, (2.0,)))
    double = multiple_completed_dedekind_2d(K, (3.0, 2.0)).value
    e2 = abs(double - unfolding_oracle(K, (3.0, 2.0)))
    ok = e_ref < 1e-3 and e1 < 1e-4 and e2 < 1e-4
    report(11, ok, f"Q(sqrt5): {single:.8f} vs pi^-2 zeta_K(2) err {e_ref:.1e}; unfolding errs d=1 {e1:.1e}, d=2 {e2:.1e}")
    assert ok


def test_12_path_reduction_and_nested(report):
    Q = NumberFieldSpec.parse("Q")
    red = max(abs(multiple_completed_zeta_path(Q, (s,)).value - completed_zeta(Q, s).value) for s in (2.0, 3.0, 4.0))
    nested = abs(multiple_completed_zeta_path(Q, (4.0, 2.0)).value - nested_path_oracle((4.0, 2.0)))
    ok = red < 1e-8 and nested < 1e-6
    report(12, ok, f"d=1 path vs completed max err {red:.1e}; (4,2) vs nested quadrature {nested:.1e}")
    assert ok


DETERMINISM_COMMANDS = [
    ["shuffle", "3", "2", "--sigma", "[2,1,3]", "--tau", "[2,1]"],
    ["verify", "hopf", "--max-degree", "2"],
    ["verify", "group-like", "--max-degree", "2"],
    ["integrate", "-", "--method", "mc", "--samples", "5000"],
    ["integrate", "-", "--method", "gauss"],
    ["zeta", "--s", "2"],
    ["zeta", "--s", "3", "--method", "mc", "--samples", "5000"],
    ["zeta", "--field", "Q:sqrt5", "--s", "2", "--membrane"],
]


def _cli(argv):
    spec = json.dumps({"forms": [{"poly": [[1, 0, 0], [1, 1, 0]]}, "y"]})
    cmd = [sys.executable, "-m", "membrane", *argv, "--json", "--seed", "11"]
    return subprocess.run(cmd, input=spec, capture_output=True, text=True, timeout=120)


def test_13_cli_determinism(report):
    diffs = []
    for argv in DETERMINISM_COMMANDS:
        a, b = _cli(argv), _cli(argv)
        if a.returncode != 0 or a.stdout != b.stdout or a.returncode != b.returncode or not a.stdout:
            diffs.append(" ".join(argv))
    ok = not diffs
    report(13, ok, f"{len(DETERMINISM_COMMANDS)} CLI commands byte-identical across runs" + (f"; differing: {diffs}" if diffs else ""))
    assert ok
