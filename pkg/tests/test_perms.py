import itertools
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from membrane.perms import (
    InvalidInput,
    Permutation,
    all_permutations,
    concat_perm,
    dumps_set,
    is_shuffle,
    restricted_shuffles,
    shuffles,
    triple_shuffles,
)


def perms_of(n, offset=0):
    return st.permutations(list(range(offset + 1, offset + n + 1))).map(lambda p: Permutation(tuple(p), offset))


@st.composite
def block_pair(draw, max_total=6):
    m = draw(st.integers(0, max_total))
    n = draw(st.integers(0, max_total - m))
    return draw(perms_of(m)), draw(perms_of(n, m))


def test_parse_formats():
    assert Permutation.parse("[2,1,3]").images == (2, 1, 3)
    assert Permutation.parse("2 1 3").images == (2, 1, 3)
    assert Permutation.parse("[]").n == 0


@pytest.mark.parametrize("bad", ["[1,1]", "[0,1]", "x", "[1,3]", "{}"])
def test_parse_rejects(bad):
    with pytest.raises(InvalidInput):
        Permutation.parse(bad)


def test_inverse_and_compose():
    p = Permutation((3, 1, 2))
    assert p.compose(p.inverse()) == Permutation.identity(3)
    assert p.inverse().images == (2, 3, 1)


def test_examples():
    # one variable per side: two interleavings
    assert len(shuffles(Permutation((1,)), Permutation((2,), 1))) == 2
    assert len(shuffles(Permutation(()), Permutation((1, 2, 3)))) == 1
    assert len(shuffles(Permutation((1, 2)), Permutation((3, 4), 2))) == 6


def test_tau_on_first_block_is_relabelled():
    a = shuffles(Permutation((1,)), Permutation((1,)))
    b = shuffles(Permutation((1,)), Permutation((2,), 1))
    assert a == b


def test_non_consecutive_blocks_rejected():
    with pytest.raises(InvalidInput):
        shuffles(Permutation((1, 2)), Permutation((4, 5), 3))


@given(block_pair())
def test_cardinality_and_membership(pair):
    sigma, tau = pair
    out = shuffles(sigma, tau)
    assert len(out) == comb(sigma.n + tau.n, sigma.n)
    assert len(set(out)) == len(out)
    assert all(is_shuffle(r, sigma, tau) for r in out)


@given(block_pair(max_total=5))
def test_shuffles_equal_brute_force_filter(pair):
    sigma, tau = pair
    n = sigma.n + tau.n
    brute = [p for p in all_permutations(n) if is_shuffle(p, sigma, tau)]
    assert sorted(brute, key=lambda p: p.images) == shuffles(sigma, tau)


@given(block_pair(max_total=6), st.data())
def test_restricted_shuffles_partition(pair, data):
    sigma, tau = pair
    total = 0
    for i in range(sigma.n + 1):
        for j in range(tau.n + 1):
            rs = restricted_shuffles(sigma, tau, i, j)
            assert len(rs) == comb(i + j, i) * comb(sigma.n - i + tau.n - j, sigma.n - i)
            total += len(rs)
    # every shuffle is counted once per admissible cut position (i + j fixed)
    assert total == comb(sigma.n + tau.n, sigma.n) * (sigma.n + tau.n + 1)


def test_restricted_out_of_range():
    with pytest.raises(InvalidInput):
        restricted_shuffles(Permutation((1,)), Permutation((2,), 1), 2, 0)


def test_triple_shuffles_count_and_associativity():
    s, t, z = Permutation((2, 1)), Permutation((3,), 2), Permutation((5, 4), 3)
    triple = triple_shuffles(s, t, z)
    assert len(triple) == 5 * 4 * 3 * 2 // (2 * 1 * 2)
    left = {r for st_ in shuffles(s, t) for r in shuffles(st_, z)}
    assert left == set(triple)


def test_concat_and_dump():
    c = concat_perm(Permutation((2, 1)), Permutation((1, 2)))
    assert c.images == (2, 1, 3, 4)
    assert dumps_set([c]) == dumps_set([Permutation((2, 1, 3, 4))])


def test_all_permutations_count():
    assert sum(1 for _ in all_permutations(4)) == 24
    assert {p.images for p in all_permutations(3)} == set(itertools.permutations((1, 2, 3)))
