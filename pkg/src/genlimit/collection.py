"""Indexed countable collections of infinite languages.

Indexing is 1-based.  Lazy collections expose `prefix(n)`; all algorithms
operate on prefixes.  Where an algorithm needs the intersection over the
*whole* (infinite) collection of the languages consistent with a finite
interaction record, each builder supplies a documented closed form
(`consistent_intersection`), so the computation is exact rather than
horizon-approximated.

Builder ordering conventions (indices are 1-based, `z(m)` below is the
canonical zigzag 0, -1, 1, -2, 2, ...):

- ``tails``:      1 -> Z;  k >= 2 -> tail(z(k-2)).
- ``cofinite1``:  1 -> Z;  k >= 2 -> Z \\ {z(k-2)}.
- ``evenodd``:    2d-1 -> E + S_d,  2d -> O + S_d, where E / O are the
  negative even / odd integers and S_d is the block of d consecutive
  positive integers following S_{d-1} (S_1 = {1}, S_2 = {2,3}, ...).
- ``cofinite12``: odd k = 2m+1 -> Z \\ {z(m)}; even k = 2m+2 ->
  Z \\ {pair(m)} with pairs of distinct integers enumerated diagonally
  over canonical ranks.
- ``singleton``:  the one-language collection {Z}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import intset
from .intset import SymbolicSet, canon_unrank, classify


class LanguageIndexError(IndexError):
    """Language index out of range for a finite collection."""


@dataclass(frozen=True)
class Language:
    body: SymbolicSet

    def __post_init__(self):
        if self.body.is_finite():
            raise ValueError("languages must be infinite")

    def __contains__(self, x: int) -> bool:
        return x in self.body


ConsistentIntersection = Callable[
    [frozenset[int], frozenset[int], frozenset[int]], SymbolicSet | None]


@dataclass
class Collection:
    """A finite or lazily-indexed sequence of languages with oracle facade.

    `consistent_fn(members, yes, no)` returns the exact intersection of all
    languages L in the full collection with members ∪ yes ⊆ L and
    no ∩ L = ∅, or None when no such language exists.  For finite
    collections it defaults to direct computation over all languages.
    """

    name: str
    indexer: Callable[[int], Language]
    size: int | None = None
    consistent_fn: ConsistentIntersection | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def language(self, i: int) -> Language:
        if i < 1 or (self.size is not None and i > self.size):
            raise LanguageIndexError(f"index {i} out of range for {self.name}")
        lang = self._cache.get(i)
        if lang is None:
            lang = self._cache[i] = self.indexer(i)
        return lang

    def prefix(self, n: int) -> list[Language]:
        if self.size is not None:
            n = min(n, self.size)
        return [self.language(i) for i in range(1, n + 1)]

    # -- the four oracle interfaces --------------------------------------

    def membership_oracle(self, i: int, w: int) -> bool:
        return w in self.language(i)

    def infinite_intersection_oracle(self, indices) -> bool:
        body = intset.intersect_all(self.language(i).body for i in indices)
        return not classify(body).finite

    def finite_difference_oracle(self, i: int, j: int) -> bool:
        diff = self.language(i).body - self.language(j).body
        return classify(diff).finite

    def subset_oracle(self, i: int, j: int) -> bool:
        return intset.is_subset(self.language(i).body,
                                self.language(j).body)

    def consistent_intersection(self, members, yes=(), no=()):
        """Exact ∩ of all collection languages containing members ∪ yes and
        excluding every element of no; None if no language qualifies."""
        members = frozenset(members)
        yes = frozenset(yes)
        no = frozenset(no)
        if (members | yes) & no:
            return None
        if self.consistent_fn is not None:
            return self.consistent_fn(members, yes, no)
        assert self.size is not None, "lazy collection needs consistent_fn"
        result = None
        for i in range(1, self.size + 1):
            body = self.language(i).body
            inside = all(x in body for x in members | yes)
            outside = all(x not in body for x in no)
            if inside and outside:
                result = body if result is None else result & body
        return result


class CountingOracles:
    """Oracle facade that counts calls per oracle, for purity checks."""

    def __init__(self, collection: Collection):
        self._c = collection
        self.counts = {"membership": 0, "infinite_intersection": 0,
                       "finite_difference": 0, "subset": 0}

    def membership_oracle(self, i, w):
        self.counts["membership"] += 1
        return self._c.membership_oracle(i, w)

    def infinite_intersection_oracle(self, indices):
        self.counts["infinite_intersection"] += 1
        return self._c.infinite_intersection_oracle(indices)

    def finite_difference_oracle(self, i, j):
        self.counts["finite_difference"] += 1
        return self._c.finite_difference_oracle(i, j)

    def subset_oracle(self, i, j):
        self.counts["subset"] += 1
        return self._c.subset_oracle(i, j)

    def non_membership_calls(self) -> int:
        return sum(v for k, v in self.counts.items() if k != "membership")


# -- builders ------------------------------------------------------------

def _tails_language(k: int) -> Language:
    if k == 1:
        return Language(intset.universe())
    return Language(intset.tail(canon_unrank(k - 2)))


def _tails_consistent(members, yes, no):
    # Languages: Z (consistent iff no = ∅) and tail(m), consistent iff
    # max(no) < m <= min(required).  The meet of consistent tails is the
    # one with the largest m.
    required = members | yes
    if not required:
        # Unboundedly many tails stay consistent; their meet is empty.
        return intset.empty()
    min_req = min(required)
    if no and max(no) + 1 > min_req:
        return None
    return intset.tail(min_req)


def _cofinite1_language(k: int) -> Language:
    if k == 1:
        return Language(intset.universe())
    return Language(intset.cofinite({canon_unrank(k - 2)}))


def _cofinite1_consistent(members, yes, no):
    required = members | yes
    if len(no) > 1:
        return None
    if len(no) == 1:
        (w,) = no
        return intset.cofinite({w})
    # Z and every Z \ {i}, i outside required: meet is exactly required.
    return intset.finite(required)


_EVENODD_E = intset.negative_evens()
_EVENODD_O = intset.negative_odds()


def evenodd_block(d: int) -> SymbolicSet:
    """S_d: the d consecutive positive integers following S_{d-1}."""
    start = d * (d - 1) // 2 + 1
    return intset.finite(range(start, start + d))


def evenodd_block_index(x: int) -> int | None:
    """The d with x in S_d, or None for non-positive x."""
    if x < 1:
        return None
    d = 1
    while d * (d + 1) // 2 < x:
        d += 1
    return d


def _evenodd_language(k: int) -> Language:
    d, side = divmod(k - 1, 2)
    base = _EVENODD_E if side == 0 else _EVENODD_O
    return Language(base | evenodd_block(d + 1))


def _evenodd_consistent(members, yes, no):
    required = members | yes
    candidates: list[SymbolicSet] = []
    # L^P_d ⊇ required iff required's non-P part fits inside S_d, which
    # pins d unless required stays entirely within P.
    positives = {x for x in required if x >= 1}
    block_ds = {evenodd_block_index(x) for x in positives}
    for base in (_EVENODD_E, _EVENODD_O):
        rest = {x for x in required if x not in base}
        rest_pos = {x for x in rest if x >= 1}
        if rest != rest_pos:
            continue  # negative leftovers fit in no block
        if rest_pos:
            ds = {evenodd_block_index(x) for x in rest_pos}
            if len(ds) != 1:
                continue
            (d,) = ds
            block = evenodd_block(d)
            if not all(x in block for x in rest_pos):
                continue
            body = base | block
            if all(x not in body for x in no):
                candidates.append(body)
        else:
            if any(x in base for x in no):
                continue  # a forbidden point inside P kills the family
            # Every L^P_d with S_d ∩ no = ∅ contains required; infinitely
            # many blocks remain admissible, so the family meet is base.
            candidates.append(base)
    if not candidates:
        return None
    return intset.intersect_all(candidates)


def _pair(m: int) -> tuple[int, int]:
    """Diagonal enumeration of rank pairs 0<=a<b mapped to integer pairs."""
    b = 1
    while m >= b:
        m -= b
        b += 1
    a = m
    i, j = canon_unrank(a), canon_unrank(b)
    return (i, j) if i < j else (j, i)


def _cofinite12_language(k: int) -> Language:
    m, side = divmod(k - 1, 2)
    if side == 0:
        return Language(intset.cofinite({canon_unrank(m)}))
    return Language(intset.cofinite(set(_pair(m))))


def _cofinite12_consistent(members, yes, no):
    required = members | yes
    if len(no) > 2:
        return None
    if len(no) == 2:
        return intset.cofinite(no)
    if len(no) == 1:
        # Z\{w} plus every Z\{w, j}: the meet is required ∪ ... exactly
        # required, since any other point is excluded by some pair.
        return intset.finite(required)
    return intset.finite(required)


def _singleton_language(k: int) -> Language:
    return Language(intset.universe())


def _singleton_consistent(members, yes, no):
    if no:
        return None
    return intset.universe()


def build_collection(name: str) -> Collection:
    if name == "tails":
        return Collection("tails", _tails_language,
                          consistent_fn=_tails_consistent)
    if name == "cofinite1":
        return Collection("cofinite1", _cofinite1_language,
                          consistent_fn=_cofinite1_consistent)
    if name == "evenodd":
        return Collection("evenodd", _evenodd_language,
                          consistent_fn=_evenodd_consistent)
    if name == "cofinite12":
        return Collection("cofinite12", _cofinite12_language,
                          consistent_fn=_cofinite12_consistent)
    if name == "singleton":
        return Collection("singleton", _singleton_language, size=1,
                          consistent_fn=_singleton_consistent)
    raise ValueError(f"unknown collection {name!r}")


COLLECTION_NAMES = ("tails", "cofinite1", "evenodd", "cofinite12",
                    "singleton")


# -- the membership-query lower-bound construction -----------------------

BOTH = "both"
UNASSIGNED = "unassigned"


@dataclass
class DynamicLanguagePair:
    """Two languages built online; every placement is irrevocable.

    `assigned[x]` is 0, 1 or BOTH once x has been placed.  Fresh strings
    are drawn from the canonical order, skipping already-placed keys.
    """

    assigned: dict[int, object] = field(default_factory=dict)
    toggle: int = 0
    next_fresh: int = 0  # canonical rank cursor

    def status(self, x: int):
        return self.assigned.get(x, UNASSIGNED)

    def fresh(self) -> int:
        while True:
            x = canon_unrank(self.next_fresh)
            self.next_fresh += 1
            if x not in self.assigned:
                return x

    def place_both(self, x: int) -> None:
        assert self.status(x) in (UNASSIGNED, BOTH)
        self.assigned[x] = BOTH

    def place_toggle(self, x: int) -> int:
        """Place x in L_a for the current toggle a, then flip a."""
        assert self.status(x) == UNASSIGNED
        side = self.toggle
        self.assigned[x] = side
        self.toggle = 1 - side
        return side

    def in_language(self, x: int, which: int) -> bool:
        st = self.status(x)
        return st == BOTH or st == which

    def side_counts(self) -> dict[object, int]:
        counts = {0: 0, 1: 0, BOTH: 0}
        for v in self.assigned.values():
            counts[v] += 1
        return counts
