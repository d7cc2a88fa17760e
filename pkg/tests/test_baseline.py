import itertools
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from gfmatch.baseline import (
    SUBSTRING,
    WHOLE,
    amir_nor_match,
    compositions,
    length_vectors,
    oracle_match,
)
from gfmatch.core import intern, verify
from gfmatch.errors import InvalidSpec, TimedOut, TooLarge


def bounds(found):
    return [mp.boundaries for mp in found]


def test_compositions_counts():
    assert list(compositions(4, 2)) == [(0, 1, 4), (0, 2, 4), (0, 3, 4)]
    assert len(list(compositions(5, 3))) == comb(4, 2)
    assert list(compositions(2, 3)) == []
    assert list(compositions(3, 1, offset=2)) == [(2, 5)]


def test_oracle_examples():
    assert bounds(oracle_match(intern("aa"), intern("abab"))) == [(0, 2, 4)]
    assert len(oracle_match(intern("abc"), intern("vwxyz"))) == 6
    assert len(oracle_match(intern("ab"), intern("wxyz"))) == 3


def test_oracle_cap_and_mode_checks():
    with pytest.raises(TooLarge):
        oracle_match([0, 1, 2, 3], [0] * 40, cap=100)
    with pytest.raises(InvalidSpec):
        oracle_match([0], [0], mode="bogus")
    with pytest.raises(InvalidSpec):
        oracle_match([0], [0], mode=SUBSTRING, via="bogus")


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=5), st.lists(st.integers(0, 2), min_size=1, max_size=10))
def test_oracle_routes_agree(p, t):
    assert oracle_match(p, t, SUBSTRING) == oracle_match(p, t, SUBSTRING, via="reduction")


def test_amir_nor_examples():
    assert bounds(amir_nor_match(intern("aa"), intern("abab"), WHOLE)) == [(0, 2, 4)]
    assert bounds(amir_nor_match(intern("aba"), intern("xyx"), WHOLE)) == [(0, 1, 2, 3)]
    assert amir_nor_match(intern("ab"), intern("q"), WHOLE) == []


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=6), st.lists(st.integers(0, 2), min_size=1, max_size=12),
       st.sampled_from([WHOLE, SUBSTRING]))
def test_amir_nor_equals_oracle(p, t, mode):
    found = amir_nor_match(p, t, mode)
    assert found == oracle_match(p, t, mode)
    assert all(verify(p, t, mp) for mp in found)


@pytest.mark.parametrize("weights", [(1,), (2,), (1, 2), (2, 2), (1, 1, 3), (3, 2, 1)])
def test_length_vectors_exact_count(weights):
    for budget in range(0, 16):
        direct = [
            v for v in itertools.product(range(1, budget + 1), repeat=len(weights))
            if sum(w * x for w, x in zip(weights, v)) == budget
        ]
        got = [tuple(v) for v in length_vectors(weights, budget, exact=True)]
        assert got == sorted(direct)


def test_length_vectors_budget():
    got = [tuple(v) for v in length_vectors((1, 2), 5, exact=False)]
    assert got == [(1, 1), (1, 2), (2, 1), (3, 1)]


def test_amir_nor_deadline():
    with pytest.raises(TimedOut) as info:
        amir_nor_match([0, 1, 2, 0, 1, 2, 3], [0, 1] * 200, SUBSTRING, deadline=0.02)
    assert all(verify([0, 1, 2, 0, 1, 2, 3], [0, 1] * 200, mp) for mp in info.value.partial)
