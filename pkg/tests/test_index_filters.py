from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rpalab.index_filters import (EVENS, ODDS, Frechet, IndexSet, PrincipalAt, SupersetOf,
                                  is_member, parse_filter, parse_index_set, set_algebra)


def members(s: IndexSet, upto: int) -> set[int]:
    return {n for n in range(upto) if n in s}


index_sets = st.builds(
    IndexSet.build,
    st.integers(1, 6),
    st.lists(st.integers(0, 5), max_size=4),
    st.lists(st.integers(0, 30), max_size=3),
    st.lists(st.integers(0, 30), max_size=3),
)

filters = st.one_of(
    st.just(Frechet()),
    st.builds(PrincipalAt, st.integers(0, 40)),
    index_sets.filter(lambda s: not s.is_finite).map(SupersetOf),
)


def test_membership_examples():
    assert not is_member(Frechet(), EVENS)
    assert is_member(PrincipalAt(4), EVENS)
    edited = IndexSet.build(2, [0], added=[7], removed=[2])
    assert is_member(SupersetOf(EVENS), edited)


def test_set_algebra_examples():
    assert EVENS.complement() == ODDS
    empty = EVENS & ODDS
    assert empty.modulus == 1 and not empty.residues and empty.is_finite
    assert (EVENS - IndexSet.finite([0])) | IndexSet.finite([0]) == EVENS


def test_canonical_form():
    s = IndexSet.build(6, [0, 2, 4])
    assert s == EVENS
    assert IndexSet.build(4, [1, 3], added=[1, 8], removed=[5]) == IndexSet(2, frozenset({1}),
                                                                           frozenset({8}),
                                                                           frozenset({5}))


def test_finite_and_cofinite():
    assert IndexSet.finite([1, 2]).is_finite
    assert IndexSet.everything().is_cofinite
    assert 5 in IndexSet.everything() and -1 not in IndexSet.everything()


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        IndexSet.build(0)
    with pytest.raises(ValueError):
        IndexSet.build(1, [], added=[-3])
    with pytest.raises(ValueError):
        SupersetOf(IndexSet.finite([1]))
    with pytest.raises(ValueError):
        PrincipalAt(-1)


def test_superset_ignores_finite_edits_of_base():
    assert SupersetOf(IndexSet.build(2, [0], added=[3])) == SupersetOf(EVENS)


def test_parse_notation():
    s = parse_index_set("mod 2 {0} + {7} - {2}")
    assert (s.modulus, s.residues, s.added, s.removed) == (2, {0}, {7}, {2})
    assert parse_index_set("{1, 4}") == IndexSet.finite([1, 4])
    assert str(s) == "mod 2 {0} + {7} - {2}"
    assert parse_index_set(str(s)) == s
    with pytest.raises(ValueError):
        parse_index_set("mod two {1}")


def test_parse_filter_flag():
    assert parse_filter("frechet") == Frechet()
    assert parse_filter("principal:5") == PrincipalAt(5)
    assert parse_filter("superset:2:0") == SupersetOf(EVENS)
    assert parse_filter("superset:3:1,2") == SupersetOf(IndexSet.build(3, [1, 2]))
    for F in (Frechet(), PrincipalAt(7), SupersetOf(ODDS)):
        assert parse_filter(str(F)) == F
    with pytest.raises(ValueError):
        parse_filter("ultra")


@given(index_sets, index_sets)
def test_boolean_operations_are_exact(s, t):
    horizon = 2 * 6 * 6 + 40
    a, b = members(s, horizon), members(t, horizon)
    assert members(s | t, horizon) == a | b
    assert members(s & t, horizon) == a & b
    assert members(s - t, horizon) == a - b
    assert members(s.complement(), horizon) == set(range(horizon)) - a
    assert set_algebra(s, t, "union") == s | t


@given(index_sets)
def test_canonical_modulus_is_minimal(s):
    for d in range(1, s.modulus):
        if s.modulus % d == 0:
            assert any((r + d) % s.modulus not in s.residues for r in s.residues)


@given(filters, index_sets, index_sets)
def test_filter_laws(F, s, t):
    assert not is_member(F, IndexSet.finite([]))
    assert is_member(F, IndexSet.everything())
    if is_member(F, s):
        assert is_member(F, s | t)  # upward closure
    assert is_member(F, s & t) == (is_member(F, s) and is_member(F, t))
