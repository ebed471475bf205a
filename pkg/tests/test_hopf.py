import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from membrane import hopf
from membrane.hopf import (
    UNIT,
    FormalSeries,
    Monomial,
    antipode,
    canonicalize,
    classes,
    coproduct,
    counit,
    embed_i,
    embed_i2,
    group_like_check,
    mul_RA,
    times1,
    times2,
    transpose,
    truncated_J,
)
from membrane.perms import InvalidInput


@st.composite
def monomials(draw, k=2, max_deg=3):
    n = draw(st.integers(0, max_deg))
    word = tuple(draw(st.lists(st.integers(1, k), min_size=n, max_size=n)))
    s2 = tuple(draw(st.permutations(list(range(1, n + 1)))))
    return Monomial(word, s2)


def series(m, N=6):
    return FormalSeries.monomial(m, N)


def test_canonical_form_relabels_word_and_y_order():
    # variables ordered in x as (2, 1): new variable 1 is old 2
    m = canonicalize((7, 8), (2, 1), (1, 2))
    assert m == Monomial((8, 7), (2, 1))
    assert canonicalize((7, 8), (1, 2), (1, 2)) == Monomial((7, 8), (1, 2))


def test_canonicalize_rejects_size_mismatch():
    with pytest.raises(InvalidInput):
        canonicalize((1, 2), (1,), (1, 2))


def test_transpose_is_involution():
    for m in classes(2, 3):
        assert transpose(transpose(m)) == m


def test_degree_one_product_has_four_classes():
    a, b = Monomial((1,), (1,)), Monomial((2,), (1,))
    p = mul_RA(series(a, 2), series(b, 2))
    assert len(p) == 4 and all(c == 1 for _, c in p)
    assert sum(c for _, c in p) == 2 * 2


def test_antipode_degree_two():
    m = Monomial((1, 2), (1, 2))
    others = {c: 1 for c in classes(2, 2) if set(c.word) == {1, 2} and c != m}
    assert antipode(m) == FormalSeries(others, 2)
    assert antipode(Monomial((1,), (1,))) == FormalSeries({Monomial((1,), (1,)): -1}, 1)


def test_coproduct_cuts_only_where_y_order_splits():
    m = Monomial((1, 2, 1), (2, 1, 3))
    cuts = {(a.degree, b.degree) for (a, b), _ in coproduct(m)}
    assert cuts == {(0, 3), (2, 1), (3, 0)}


def test_counit():
    assert counit(UNIT) == 1
    assert counit(Monomial((1,), (1,))) == 0


@pytest.mark.parametrize("k,N", [(1, 4), (2, 3)])
def test_hopf_axioms_exhaustive(k, N):
    mons = [m for n in range(N + 1) for m in classes(k, n)]
    for m in mons:
        assert hopf.coassociativity_defect(m) == 0
        assert hopf.counit_defect(m) == 0
        assert len(hopf.antipode_defect(m, "left")) == 0
        assert len(hopf.antipode_defect(m, "right")) == 0
    for a, b in itertools.product(mons, repeat=2):
        if a.degree + b.degree <= N:
            assert hopf.bialgebra_defect(a, b) == 0


@given(monomials(), monomials())
def test_product_commutative(a, b):
    assert mul_RA(series(a), series(b)) == mul_RA(series(b), series(a))


@given(monomials(max_deg=2), monomials(max_deg=2), monomials(max_deg=2))
def test_product_associative(a, b, c):
    A, B, C = series(a), series(b), series(c)
    assert mul_RA(mul_RA(A, B), C) == mul_RA(A, mul_RA(B, C))


@given(monomials(), monomials())
def test_product_term_count(a, b):
    from math import comb

    n = a.degree + b.degree
    total = sum(c for _, c in mul_RA(series(a), series(b)))
    assert total == comb(n, a.degree) ** 2


@given(monomials(max_deg=4))
def test_antipode_involution_commutative_case(m):
    # the product is commutative, so the antipode is an involution
    S2 = antipode(antipode(m))
    assert S2 == FormalSeries({m: 1}, m.degree)


def test_embed_counts():
    m = Monomial((1, 2), (2, 1))
    assert len(embed_i(m)) == 3
    assert len(embed_i2(embed_i(m))) == 9
    with pytest.raises(InvalidInput):
        embed_i(embed_i(m))


def test_times1_concatenates_x_and_shuffles_y():
    a, b = Monomial((1,), (1,)), Monomial((2,), (1,))
    out = times1(series(a, 2), series(b, 2))
    assert len(out) == 2
    assert all(m.xsplit == 1 for m, _ in out)
    assert {m.sigma2 for m, _ in out} == {(1, 2), (2, 1)}


def test_times2_is_transposed_times1():
    for a in classes(2, 1):
        for b in classes(2, 2):
            h = times1(series(a, 3), series(b, 3))
            v = times2(series(a, 3), series(b, 3))
            assert sorted((m.xsplit, m.ysplit) for m, _ in h) == sorted((m.ysplit, m.xsplit) for m, _ in v)


def test_thm15_combinatorial_counts():
    rep = hopf.verify_thm_1_5(2, 3)
    assert rep.passed
    assert rep.details["indexed_counts"] == {0: 1, 1: 4, 2: 24, 3: 192}


def test_interchange_formal():
    lhs, rhs = hopf.interchange_series(1, 3)
    assert lhs == rhs
    assert all(c == 1 for _, c in lhs)


def test_group_like_formal_J():
    J = truncated_J(2, 3)
    assert group_like_check(J, 3).passed


def test_group_like_detects_wrong_coefficient():
    J = truncated_J(1, 2)
    bad = J + FormalSeries({Monomial((1, 1), (1, 2)): 1}, 2)
    assert not group_like_check(bad, 2).passed


def test_series_json_round_trip():
    s = FormalSeries({Monomial((1, 2), (2, 1), 1): Fraction(3, 4), UNIT: 2}, 3)
    t = FormalSeries.from_json(s.to_json())
    assert t == s


def test_alphabet_guard():
    with pytest.raises(InvalidInput):
        FormalSeries({Monomial((3,), (1,)): 1}, 2, alphabet=2)


def test_truncation_mismatch():
    with pytest.raises(InvalidInput):
        FormalSeries.one(2) + FormalSeries.one(3)
