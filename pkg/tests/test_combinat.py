"""Weak tuples, orbits, and the partition identity."""

import itertools
from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gsalg.combinat import (
    multiplicities,
    orbit,
    orbit_iter,
    orbit_size,
    validate_weak_tuple,
    weak_tuple_count,
    weak_tuple_count_bound,
    weak_tuples,
)
from gsalg.errors import InvalidParams, TooLarge


def test_count_examples():
    assert weak_tuple_count(2, 7) == 8
    assert weak_tuple_count(2, 3) == 4
    assert weak_tuple_count(6, 2) == 21
    for q in range(1, 7):
        for n in range(0, 7):
            assert weak_tuple_count(q, n) == comb(n + q - 1, q - 1)
            assert weak_tuple_count(q, n) == len(weak_tuples(q, n))


def test_count_bound_dominates():
    for q in range(2, 8):
        for n in range(1, 8):
            assert weak_tuple_count_bound(q, n) >= weak_tuple_count(q, n)


def test_tuples_are_sorted_and_weakly_increasing():
    ts = weak_tuples(3, 4)
    assert ts == sorted(ts)
    for t in ts:
        assert all(a <= b for a, b in zip(t, t[1:]))
        assert all(1 <= a <= 3 for a in t)


def test_validate_weak_tuple():
    validate_weak_tuple((1, 1, 3), 3)
    validate_weak_tuple((), 2)
    with pytest.raises(InvalidParams):
        validate_weak_tuple((2, 1), 3)
    with pytest.raises(InvalidParams):
        validate_weak_tuple((0, 1), 3)
    with pytest.raises(InvalidParams):
        validate_weak_tuple((1, 4), 3)


def test_orbit_size_example():
    # seven positions, three 1s and four 2s
    assert orbit_size((1, 1, 1, 2, 2, 2, 2)) == 35
    assert orbit_size(()) == 1
    assert orbit_size((1, 2, 3)) == 6


def test_multiplicities():
    assert multiplicities((1, 1, 3), 3) == (2, 0, 1)
    assert multiplicities((), 2) == (0, 0)
    j = (1, 1, 2, 2, 2)
    mult = multiplicities(j, 2)
    assert orbit_size(j) == factorial(len(j)) // (
        factorial(mult[0]) * factorial(mult[1])
    )


def test_orbit_matches_permutation_set():
    for j in [(1, 2), (1, 1, 2), (1, 2, 3), (2, 2, 2), (1, 1, 2, 3)]:
        got = orbit(j)
        want = sorted(set(itertools.permutations(j)))
        assert got == want
        assert len(got) == orbit_size(j)
        assert list(orbit_iter(j)) == got


def test_partition_identity():
    # the orbits of the weak tuples partition all q^n position tuples
    for q in range(1, 7):
        for n in range(0, 7):
            assert sum(orbit_size(j) for j in weak_tuples(q, n)) == q**n


def test_enumeration_caps():
    with pytest.raises(TooLarge):
        weak_tuples(100, 50, cap=1000)
    with pytest.raises(TooLarge):
        orbit(tuple(range(1, 12)), cap=1000)


@given(
    st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=6).map(
        lambda xs: tuple(sorted(xs))
    )
)
def test_orbit_properties(j):
    got = orbit(j)
    assert got == sorted(set(itertools.permutations(j)))
    assert got[0] == j  # the weakly increasing tuple is its orbit's minimum
    assert len(got) == orbit_size(j)
