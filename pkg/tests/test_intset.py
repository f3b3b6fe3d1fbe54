import pytest
from hypothesis import given, settings, strategies as st

from genlimit import intset
from genlimit.intset import (
    SetFormatError, SymbolicSet, canon_rank, canon_unrank, classify,
    cofinite, difference, empty, enumerate_rank, finite, format_set,
    intersect, is_subset, member, negative_evens, normalize, parse_set,
    residues, tail, union, universe, upto,
)


def brute_members(s: SymbolicSet, lo: int, hi: int) -> set[int]:
    return {x for x in range(lo, hi + 1) if x in s}


raw_sets = st.builds(
    lambda p, lo, width, bits, left, right: normalize(
        p, lo, lo + width,
        frozenset(x for i, x in enumerate(range(lo, lo + width + 1))
                  if bits & (1 << i)),
        frozenset(r for r in range(p) if left & (1 << r)),
        frozenset(r for r in range(p) if right & (1 << r))),
    st.integers(1, 6), st.integers(-50, 40), st.integers(0, 10),
    st.integers(0, 2 ** 11 - 1), st.integers(0, 63), st.integers(0, 63))


def test_canonical_order():
    assert [canon_unrank(k) for k in range(7)] == [0, -1, 1, -2, 2, -3, 3]
    for k in range(100):
        assert canon_rank(canon_unrank(k)) == k


def test_normalize_full_universe_from_redundant_encoding():
    s = normalize(2, 0, 0, {0}, {0, 1}, {0, 1})
    assert s == universe()
    assert s.period == 1


def test_normalize_singleton_with_large_period():
    s = normalize(4, 3, 3, {3})
    assert s == finite({3})
    assert s.period == 1 and (s.lo, s.hi) == (3, 3)
    assert not s.left_residues and not s.right_residues


def test_normalize_negative_evens_matches_predicate():
    raw = normalize(2, -10, -1, {-10, -8, -6, -4, -2}, {0}, ())
    assert raw == negative_evens()
    assert raw.period == 2
    assert raw.left_residues == frozenset({0})
    assert not raw.right_residues
    for x in range(-100, 101):
        assert (x in raw) == (x < 0 and x % 2 == 0)


def test_normalize_rejects_malformed():
    with pytest.raises(SetFormatError):
        normalize(0, 0, 0, ())
    with pytest.raises(SetFormatError):
        normalize(1, 0, 0, {5})
    with pytest.raises(SetFormatError):
        normalize(1, 2, 0, ())
    with pytest.raises(SetFormatError):
        normalize(2, 0, 0, (), {3})


def test_member_examples():
    assert not member(cofinite({1, 5}), 5)
    assert not member(tail(0), -3)
    assert member(union(negative_evens(), finite({1, 2, 3})), -4)


def test_algebra_examples():
    assert intersect(tail(0), tail(-5)) == tail(0)
    inf_left = difference(universe(), tail(-1))
    assert inf_left == upto(-2)
    assert not inf_left.is_finite()
    assert difference(universe(), cofinite({3})) == finite({3})


def test_classify_examples():
    assert classify(empty()) == intset.Classification(True, 0)
    e_s = union(negative_evens(), finite({3, 4}))
    o_s = union(intset.negative_odds(), finite({3, 4}))
    assert classify(intersect(e_s, o_s)) == intset.Classification(True, 2)
    assert not classify(intersect(cofinite({1}), cofinite({2}))).finite


def test_is_subset_examples():
    assert is_subset(tail(0), tail(-1))
    assert not is_subset(universe(), cofinite({1}))
    assert is_subset(cofinite({1}), universe())


def test_enumerate_rank_examples():
    assert [enumerate_rank(universe(), k) for k in range(5)] == \
        [0, -1, 1, -2, 2]
    assert enumerate_rank(cofinite({0}), 0) == -1
    assert enumerate_rank(tail(0), 2) == 2
    with pytest.raises(IndexError):
        enumerate_rank(finite({1, 2}), 2)


@given(raw_sets, raw_sets)
def test_algebra_matches_brute_force(a, b):
    p = max(a.period, b.period, 1)
    lo = min(a.lo, b.lo) - 3 * p
    hi = max(a.hi, b.hi) + 3 * p
    ma, mb = brute_members(a, lo, hi), brute_members(b, lo, hi)
    assert brute_members(a & b, lo, hi) == ma & mb
    assert brute_members(a | b, lo, hi) == ma | mb
    assert brute_members(a - b, lo, hi) == ma - mb
    comp = a.complement()
    assert brute_members(comp, lo, hi) == \
        set(range(lo, hi + 1)) - ma


@given(raw_sets)
def test_classify_matches_brute_force(s):
    c = classify(s)
    outside = any(x in s for x in
                  list(range(s.lo - 3 * s.period, s.lo)) +
                  list(range(s.hi + 1, s.hi + 3 * s.period + 1)))
    if c.finite:
        assert not outside
        assert c.cardinality == len(brute_members(s, s.lo, s.hi))
    else:
        assert s.left_residues or s.right_residues


@given(raw_sets, raw_sets)
def test_is_subset_via_difference(a, b):
    assert is_subset(a, b) == (classify(difference(a, b)) ==
                               intset.Classification(True, 0))


@given(raw_sets)
def test_normalize_idempotent(s):
    again = normalize(s.period, s.lo, s.hi, s.explicit,
                      s.left_residues, s.right_residues)
    assert again == s


@given(raw_sets, st.integers(1, 3), st.integers(-5, 5))
def test_equal_encodings_normalize_identically(s, mult, shift):
    # Re-encode with a blown-up period and a padded window.
    p = s.period * mult
    lo, hi = s.lo - abs(shift), s.hi + abs(shift)
    redone = normalize(
        p, lo, hi,
        frozenset(x for x in range(lo, hi + 1) if x in s),
        frozenset(r for r in range(p) if r % s.period in s.left_residues),
        frozenset(r for r in range(p) if r % s.period in s.right_residues))
    assert redone == s


@settings(max_examples=40)
@given(raw_sets)
def test_enumerate_rank_is_canonical_filter(s):
    limit = 200
    if s.is_finite():
        limit = min(limit, len(s.explicit))
    expected = [x for x in (canon_unrank(k) for k in range(20000))
                if x in s][:limit]
    got = [enumerate_rank(s, k) for k in range(limit)]
    assert got == expected
    ranks = [canon_rank(x) for x in got]
    assert ranks == sorted(ranks)


def test_parse_examples():
    assert parse_set("Z") == universe()
    assert parse_set("Z \\ {3}") == cofinite({3})
    assert parse_set("tail(-2)") == tail(-2)
    assert parse_set("evens<0 + {1,2}") == \
        union(negative_evens(), finite({1, 2}))
    assert parse_set("finite{0,1,2}") == finite({0, 1, 2})
    assert parse_set("mod(3;0,2)") == residues(3, {0, 2})
    with pytest.raises(SetFormatError):
        parse_set("tail(")
    with pytest.raises(SetFormatError):
        parse_set("wibble")


@given(raw_sets)
def test_printer_parser_round_trip(s):
    assert parse_set(format_set(s)) == s
