import math

import pytest
from hypothesis import given, strategies as st

from qhopf.combinatorics import (
    AlternatingSumVerdict,
    BinomTable,
    SubsetIndex,
    binom,
    lemma23_verify,
    moebius_sign_sum,
    subsets,
)
from qhopf.errors import HypothesisRangeError


def test_binom_matches_math_comb():
    for u in range(12):
        for v in range(u + 1):
            assert binom(u, v) == math.comb(u, v)


def test_binom_zero_extension():
    assert binom(3, -1) == 0
    assert binom(3, 4) == 0
    assert binom(-1, 0) == 0
    assert binom(-2, 1) == 0
    assert binom(0, 0) == 1


@given(st.integers(-20, 20), st.integers(-20, 20))
def test_binom_pascal_recurrence(u, v):
    if (u, v) == (0, 0):
        return
    assert binom(u, v) == binom(u - 1, v - 1) + binom(u - 1, v)


def test_binom_table_matches_binom():
    table = BinomTable(cap=10)
    for u in range(-2, 15):
        for v in range(-2, 15):
            assert table(u, v) == binom(u, v)


def test_subset_index_validation():
    with pytest.raises(ValueError):
        SubsetIndex((0, 1), 3)
    with pytest.raises(ValueError):
        SubsetIndex((2, 2), 3)
    with pytest.raises(ValueError):
        SubsetIndex((3, 1), 3)
    with pytest.raises(ValueError):
        SubsetIndex((4,), 3)


def test_subsets_enumeration():
    all3 = list(subsets(3))
    assert len(all3) == 8
    assert all3[0] == SubsetIndex.empty(3)
    assert all3[-1] == SubsetIndex.full(3)
    # Ordered by size then lexicographically.
    sizes = [len(s) for s in all3]
    assert sizes == sorted(sizes)
    assert [s.positions for s in all3 if len(s) == 2] == [(1, 2), (1, 3), (2, 3)]


def test_subsets_of_a_subset_keep_ambient():
    sigma = SubsetIndex((1, 3), 4)
    subs = list(sigma.subsets())
    assert [s.positions for s in subs] == [(), (1,), (3,), (1, 3)]
    assert all(s.ambient == 4 for s in subs)


def test_lemma_part_a_small_case_by_hand():
    # r=0, t=2: sum_d (-1)^d binom(d-1, 0) binom(2, d)
    #         = binom(-1,0)*1 - binom(0,0)*2 + binom(1,0)*1 = 0 - 2 + 1 = -1.
    verdict = lemma23_verify(0, 2)
    assert verdict.part_a and verdict.observed_a == -1 and verdict.expected_a == -1


def test_lemma_part_b_small_case_by_hand():
    # r=1, t=2, s=1: binom(1,1)*1 - binom(2,1)*2 + binom(3,1)*1 = 1 - 4 + 3 = 0.
    verdict = lemma23_verify(1, 2, 1)
    assert verdict.part_b and verdict.observed_b == 0


def test_lemma_exhaustive_range():
    for t in range(1, 9):
        for r in range(t):
            for s in range(9):
                assert lemma23_verify(r, t, s).passed


def test_lemma_hypothesis_guard():
    with pytest.raises(HypothesisRangeError):
        lemma23_verify(3, 3)
    with pytest.raises(HypothesisRangeError):
        lemma23_verify(5, 2)
    with pytest.raises(HypothesisRangeError):
        lemma23_verify(-1, 2)
    with pytest.raises(HypothesisRangeError):
        lemma23_verify(0, 2, -1)


def test_moebius_sign_sum_collapses():
    sigma = (1, 2, 4)
    for sub in SubsetIndex(sigma, 4).subsets():
        expected = 1 if sub.positions == sigma else 0
        assert moebius_sign_sum(sub.positions, sigma) == expected
