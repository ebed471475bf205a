import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from membrane.errors import EvaluationError, IntegrabilityError, InvalidInput, UnsupportedError
from membrane.hopf import classes
from membrane.quad import (
    Form2,
    Grid2x2,
    QuadratureConfig,
    Rectangle,
    alpha_map,
    chain_integral,
    composition_identity_check,
    eval_indexed,
    eval_iterated,
    eval_path,
    exact_value,
    form_from_json,
    glue_horizontal,
    glue_vertical,
    homotopy_invariance_check,
    integrate,
    lemma21_check,
    lemma22_check,
    poly_oracle,
    poly_oracle_indexed,
    shuffle_relation_check,
    verify_interchange,
)
from membrane.quad.rules import ordered_rule, simplex_rule
from membrane.scenarios import TARGET_FORMS, CocycleScenario, bump_membrane, identity_membrane, polynomial_forms

EXACT = QuadratureConfig(method="exact")
X = Form2.poly({(1, 0): 1})
Y = Form2.poly({(0, 1): 1})
ONE = Form2.constant(1)


@st.composite
def poly_forms(draw, n):
    out = []
    for _ in range(n):
        terms = draw(
            st.dictionaries(
                st.tuples(st.integers(0, 3), st.integers(0, 3)),
                st.fractions(min_value=-3, max_value=3, max_denominator=4),
                min_size=1,
                max_size=3,
            )
        )
        out.append(Form2.poly(terms))
    return out


# --- exact oracle: values cross-checked symbolically and frozen -----------------------


@pytest.mark.parametrize(
    "forms,sx,sy,rect,expected",
    [
        ([X, Y], (1, 2), (1, 2), (0, 1, 0, 1), Fraction(1, 18)),
        ([X, Y], (1, 2), (2, 1), (0, 1, 0, 1), Fraction(1, 36)),
        (
            [Form2.poly([(1, 0, 0), (1, 1, 0)]), Y, Form2.poly([(1, 1, 1), (Fraction(-1, 2), 0, 0)])],
            (2, 1, 3),
            (3, 1, 2),
            (0, 1, 0, 1),
            Fraction(-133, 14400),
        ),
        (
            [Form2.poly({(2, 0): 1}), Form2.poly([(1, 0, 0), (1, 0, 1)]), Form2.poly({(1, 1): 1})],
            (1, 2, 3),
            (1, 2, 3),
            (0, 2, -1, 1),
            Fraction(32, 45),
        ),
    ],
)
def test_exact_oracle_frozen(forms, sx, sy, rect, expected):
    assert poly_oracle(forms, sx, sy, Rectangle(*rect)) == expected


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_constant_forms_give_simplex_volumes(n):
    v = poly_oracle([ONE] * n, tuple(range(1, n + 1)), tuple(range(n, 0, -1)))
    assert v == Fraction(1, math.factorial(n) ** 2)


def test_trivial_rectangle_area():
    assert eval_iterated([ONE], (1,), (1,), Rectangle(0, 2, 0, 3), EXACT) == 6


def test_chain_integral_matches_beta_function():
    # int_{0<t1<t2<1} t1^a t2^b = 1 / ((a+1)(a+b+2))
    for a, b in itertools.product(range(4), repeat=2):
        assert chain_integral((a, b), ((Fraction(0), Fraction(1)),) * 2) == Fraction(1, (a + 1) * (a + b + 2))


def test_chain_integral_across_two_intervals_factorizes():
    seg = ((Fraction(0), Fraction(1)), (Fraction(1), Fraction(3)))
    assert chain_integral((1, 2), seg) == Fraction(1, 2) * Fraction(26, 3)


# --- Gauss and Monte Carlo against the oracle -----------------------------------------


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(poly_forms(n), st.permutations(range(1, n + 1)), st.permutations(range(1, n + 1)))))
def test_gauss_matches_oracle(case):
    forms, sx, sy = case
    exact = poly_oracle(forms, tuple(sx), tuple(sy))
    g = eval_iterated(forms, tuple(sx), tuple(sy), Rectangle.unit(), QuadratureConfig(points=8))
    assert abs(g - float(exact)) <= 1e-12 * max(1.0, abs(float(exact)))


def test_simplex_rule_integrates_polynomials_exactly():
    pts, w = simplex_rule(3, 0.0, 2.0, 4)
    assert np.all(np.diff(pts, axis=1) >= 0)
    v = float(np.sum(w * pts[:, 0] * pts[:, 1] ** 2 * pts[:, 2] ** 3))
    exact = float(chain_integral((1, 2, 3), ((Fraction(0), Fraction(2)),) * 3))
    assert v == pytest.approx(exact, rel=1e-13)


def test_ordered_rule_volume():
    pts, w = ordered_rule(3, [0.0, 0.5, 1.5, 2.0], 3)
    assert w.sum() == pytest.approx(8 / 6, rel=1e-14)
    assert np.all(np.diff(pts, axis=1) >= -1e-15)


def test_monte_carlo_seeded_and_within_error():
    forms = polynomial_forms(3)
    cfg = QuadratureConfig(method="mc", samples=100_000, seed=11)
    a = integrate(forms, (1, 3, 2), (2, 1, 3), (0, 1), (0, 1), cfg)
    b = integrate(forms, (1, 3, 2), (2, 1, 3), (0, 1), (0, 1), cfg)
    assert a == b
    exact = float(poly_oracle(forms, (1, 3, 2), (2, 1, 3)))
    assert abs(a.value - exact) < 5 * a.est_error
    c = integrate(forms, (1, 3, 2), (2, 1, 3), (0, 1), (0, 1), QuadratureConfig(method="mc", samples=100_000, seed=12))
    assert c.value != a.value


def test_evaluator_forms():
    g = form_from_json("gauss")
    v = eval_iterated([g], (1,), (1,), Rectangle.unit())
    assert v == pytest.approx((math.sqrt(math.pi) / 2 * math.erf(1)) ** 2, rel=1e-12)


def test_non_integrable_form_raises():
    with pytest.raises(IntegrabilityError):
        eval_iterated([form_from_json("singular"), ONE], (1, 2), (1, 2))


def test_exact_mode_rejects_evaluators():
    with pytest.raises(InvalidInput):
        eval_iterated([form_from_json("cos")], (1,), (1,), Rectangle.unit(), EXACT)


def test_permutation_size_mismatch():
    with pytest.raises(InvalidInput):
        eval_iterated([ONE, ONE], (1,), (1, 2))


def test_form_json_errors():
    with pytest.raises(InvalidInput):
        form_from_json({"builtin": "nope"})
    with pytest.raises(InvalidInput):
        form_from_json({"poly": [[1, "a", 0]]})
    with pytest.raises(InvalidInput):
        form_from_json(3)


def test_degenerate_rectangle():
    with pytest.raises(InvalidInput):
        Rectangle(0, 0, 0, 1)


def test_path_integral_simplex():
    # int_{0<t1<t2<1} t1 dt1 dt2 = 1/6
    v = eval_path([lambda t: t, lambda t: np.ones_like(t)], (1, 2), 0.0, 1.0)
    assert v == pytest.approx(1 / 6, rel=1e-13)


# --- shuffle relation and the glueing lemmas ---------------------------------------------


@given(poly_forms(2), poly_forms(1), st.permutations([1, 2]), st.permutations([1, 2]))
def test_shuffle_relation_property(f1, f2, sx, sy):
    assert shuffle_relation_check(f1, tuple(sx), tuple(sy), f2, (1,), (1,)).passed


def test_shuffle_relation_float_mode():
    f = polynomial_forms(3)
    rep = shuffle_relation_check(f[:2], (2, 1), (1, 2), f[2:], (1,), (1,), cfg=QuadratureConfig(points=6))
    assert rep.passed and rep.max_deviation < 1e-13


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(poly_forms(n), st.permutations(range(1, n + 1)), st.permutations(range(1, n + 1)))))
def test_lemma21_property(case):
    forms, sx, sy = case
    A, B = Rectangle(0, 1, 0, 1), Rectangle(1, Fraction(5, 2), 0, 1)
    assert lemma21_check(forms, tuple(sx), tuple(sy), A, B).passed


def test_lemma22_and_indexed_oracle():
    A, B = Rectangle(0, 1, 0, 1), Rectangle(1, 2, 0, 1)
    f = polynomial_forms(3)
    assert lemma22_check(f[:2], (2, 1), (1, 2), f[2:], (1,), (1,), A, B).passed
    for j in range(4):
        exact = poly_oracle_indexed(f, (1, 2, 3), (3, 1, 2), j, A, B)
        num = eval_indexed(f, (1, 2, 3), (3, 1, 2), j, A, B, QuadratureConfig(points=8))
        assert num == pytest.approx(float(exact), abs=1e-13)


def test_lemma21_needs_adjacent():
    with pytest.raises(InvalidInput):
        lemma21_check([ONE], (1,), (1,), Rectangle(0, 1, 0, 1), Rectangle(2, 3, 0, 1))


def test_interchange_with_grid_exact():
    grid = Grid2x2(polynomial_forms(2), (0, 1, 2), (0, Fraction(1, 2), 1), EXACT)
    rep = verify_interchange(2, 2, grid)
    assert rep.passed and rep.max_deviation == 0


# --- membranes -----------------------------------------------------------------------------


def test_alpha_map_faces():
    P = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]
    a = alpha_map(2, P)
    t = np.linspace(0, 1, 7)
    assert np.allclose(a(np.ones_like(t), t), P[0])  # right face collapses to P0
    assert np.allclose(a(np.zeros_like(t), t)[:, 0] + a(np.zeros_like(t), t)[:, 1], 1)  # left face on P1P2
    with pytest.raises(UnsupportedError):
        alpha_map(3, P + [(1.0, 1.0)])


def test_alpha_map_path():
    p = alpha_map(1, [(0.0, 0.0), (2.0, 1.0)])
    assert np.allclose(p(np.array([0.0, 1.0])), [[2.0, 1.0], [0.0, 0.0]])


def test_glue_rejects_mismatch():
    left = identity_membrane(Rectangle(0, Fraction(1, 2), 0, 1))
    right = bump_membrane(0.1, Rectangle(Fraction(1, 2), 1, 0, 1))
    glue_horizontal(left, right)  # bump vanishes on the shared face
    shifted = identity_membrane(Rectangle(0, 1, 0, Fraction(1, 2)))
    with pytest.raises(InvalidInput):
        glue_horizontal(left, shifted)


def test_glued_membrane_guards_singular_line():
    H = glue_vertical(identity_membrane(Rectangle(0, 1, 0, Fraction(1, 2))), identity_membrane(Rectangle(0, 1, Fraction(1, 2), 1)))
    with pytest.raises(EvaluationError):
        H.partials(np.array([0.3]), np.array([0.5]))


def test_bump_membrane_fixes_boundary_and_jacobian_is_exact():
    m = bump_membrane(0.3)
    assert np.max(np.abs(m.boundary_samples() - identity_membrane().boundary_samples())) < 1e-15
    x, y = np.array([0.2, 0.7]), np.array([0.4, 0.9])
    h = 1e-6
    fd_x = (m(x + h, y) - m(x - h, y)) / (2 * h)
    assert np.allclose(m.jacobian(x, y)[0], fd_x, atol=1e-8)


def test_homotopy_holds_at_degree_one():
    m0, m1 = identity_membrane(), bump_membrane(0.2)
    for w in TARGET_FORMS:
        rep = homotopy_invariance_check(m0, m1, [w], (1,), (1,), tol=1e-10)
        assert rep.passed


def test_homotopy_fails_at_degree_two_by_eps_over_360():
    # identity vs x + eps * x(1-x) y^2(1-y): the (du^dv, du^dv) integral moves by eps/360
    eps = 0.1
    rep = homotopy_invariance_check(identity_membrane(), bump_membrane(eps), [TARGET_FORMS[0]] * 2, (1, 2), (2, 1), tol=1e-6)
    assert not rep.passed
    assert rep.max_deviation == pytest.approx(eps / 360, rel=1e-8)


def test_composition_identity_controls():
    for scen in (CocycleScenario(eps=0.0), CocycleScenario(eps=0.2, coherent=True)):
        rep = composition_identity_check(*scen.pieces(), TARGET_FORMS[:2], 2, scen.quadrature, 1e-10)
        assert rep.passed, rep.details


def test_composition_degree_one_always_agrees():
    scen = CocycleScenario(eps=0.2)
    rep = composition_identity_check(*scen.pieces(), TARGET_FORMS[:2], 2, scen.quadrature, 1e-10)
    assert rep.details["per_degree"][1] < 1e-12
    assert rep.details["per_degree"][2] == pytest.approx(0.2 / 1440, rel=1e-6)
