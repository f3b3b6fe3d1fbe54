"""Generator strategies.

All strategies break ties by the canonical order 0, -1, 1, -2, 2, ... and
are deterministic functions of what they have seen, so every run replays
exactly.  A strategy that cannot find a consistent source returns None (a
sentinel the harness records as a mistake) instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from . import intset
from .collection import (Collection, _pair, evenodd_block,
                         evenodd_block_index)
from .intset import SymbolicSet, canon_unrank, classify, enumerate_rank
from .dimensions import nonuniform_complexity


@lru_cache(maxsize=None)
def _subset_cached(a: SymbolicSet, b: SymbolicSet) -> bool:
    return intset.is_subset(a, b)


@lru_cache(maxsize=None)
def _difference_cached(a: SymbolicSet, b: SymbolicSet) -> SymbolicSet:
    return a - b


class ConsistencyTracker:
    """Incrementally maintains the consistent prefix indices for a run
    whose input set only grows; any non-monotone call falls back to a
    full recomputation."""

    def __init__(self, collection: Collection):
        self.collection = collection
        self.t = 0
        self.known: frozenset[int] = frozenset()
        self.consistent: list[int] = []

    def update(self, inputs: frozenset, t: int) -> list[int]:
        if t < self.t or not self.known <= inputs:
            self.t, self.known, self.consistent = 0, frozenset(), []
        new = inputs - self.known
        if new:
            self.consistent = [
                i for i in self.consistent
                if all(x in self.collection.language(i).body for x in new)]
        size = t if self.collection.size is None \
            else min(t, self.collection.size)
        for i in range(self.t + 1, size + 1):
            body = self.collection.language(i).body
            if all(x in body for x in inputs):
                self.consistent.append(i)
        self.consistent.sort()
        self.t, self.known = size, inputs
        return self.consistent


class NoConsistentLanguage(Exception):
    """No language in the inspected prefix contains the input set."""


@dataclass(frozen=True)
class Enumerator:
    """A snapshot of the set a generator would emit from here on."""

    support: SymbolicSet
    flagged: bool = False  # set when no consistent language existed

    def emit(self, k: int) -> int:
        return enumerate_rank(self.support, k)


@dataclass(frozen=True)
class GreedyState:
    intersection: SymbolicSet  # running I_t, always infinite


def least_outside(body: SymbolicSet, excluded) -> int:
    """Canonically least element of body \\ excluded."""
    k = 0
    while True:
        x = enumerate_rank(body, k)
        if x not in excluded:
            return x
        k += 1


def greedy_intersection_next(collection: Collection, inputs, t: int
                             ) -> tuple[int, GreedyState]:
    """Intersect the consistent prefix languages while the running
    intersection stays infinite; emit the least unseen element of it."""
    inputs = frozenset(inputs)
    running = intset.universe()
    for lang in collection.prefix(t):
        if not all(x in lang.body for x in inputs):
            continue
        candidate = running & lang.body
        if not classify(candidate).finite:
            running = candidate
    return least_outside(running, inputs), GreedyState(running)


def nonuniform_bound(collection: Collection, i_star: int) -> int:
    return max(i_star, nonuniform_complexity(collection, i_star) + 1)


# -- closed-form greedy outputs, one per built-in collection --------------
#
# These reproduce greedy_intersection_next exactly but in O(t) set work:
# for the co-finite style collections no language is ever skipped, so the
# running intersection is the universe minus the excluded sets disjoint
# from the inputs; for the nested tails it is the deepest consistent
# tail; for the parity collection it is the family of the first
# consistent language (cross-family meets are finite and get skipped).
# A test replays both implementations side by side.

def _least_canonical(pred) -> int:
    k = 0
    while True:
        x = canon_unrank(k)
        k += 1
        if pred(x):
            return x


def _fast_greedy_tails(inputs, t):
    floor = min(inputs)
    best = None
    for k in range(t - 1):
        v = canon_unrank(k)
        if v <= floor and (best is None or v > best):
            best = v
    if best is None:
        return _least_canonical(lambda x: x not in inputs)
    return _least_canonical(lambda x: x >= best and x not in inputs)


def _fast_greedy_cofinite1(inputs, t):
    excluded = {canon_unrank(k) for k in range(t - 1)} - inputs
    return _least_canonical(
        lambda x: x not in inputs and x not in excluded)


def _fast_greedy_cofinite12(inputs, t):
    excluded: set[int] = set()
    for k in range(1, t + 1):
        m, side = divmod(k - 1, 2)
        ex = {canon_unrank(m)} if side == 0 else set(_pair(m))
        if not ex & inputs:
            excluded |= ex
    return _least_canonical(
        lambda x: x not in inputs and x not in excluded)


def _fast_greedy_evenodd(inputs, t):
    def in_base(x, parity):
        return x < 0 and x % 2 == parity

    fallback = _least_canonical(lambda x: x not in inputs)
    if 0 in inputs:
        return fallback
    positives = [x for x in inputs if x >= 1]
    if positives:
        ds = {evenodd_block_index(x) for x in positives}
        if len(ds) != 1:
            return fallback
        (d,) = ds
        block = set(range(*_block_bounds(d)))
        for parity, idx in ((0, 2 * d - 1), (1, 2 * d)):
            if idx <= t and all(x >= 1 or in_base(x, parity)
                                for x in inputs):
                return _least_canonical(
                    lambda x: (in_base(x, parity) or x in block)
                    and x not in inputs)
        return fallback
    for parity, count in ((0, (t + 1) // 2), (1, t // 2)):
        if count >= 1 and all(in_base(x, parity) for x in inputs):
            if count == 1:
                return _least_canonical(
                    lambda x: (in_base(x, parity) or x == 1)
                    and x not in inputs)
            return _least_canonical(
                lambda x: in_base(x, parity) and x not in inputs)
    return fallback


def _block_bounds(d):
    start = d * (d - 1) // 2 + 1
    return start, start + d


def _fast_greedy_singleton(inputs, t):
    return _least_canonical(lambda x: x not in inputs)


_FAST_GREEDY = {
    "tails": _fast_greedy_tails,
    "cofinite1": _fast_greedy_cofinite1,
    "cofinite12": _fast_greedy_cofinite12,
    "evenodd": _fast_greedy_evenodd,
    "singleton": _fast_greedy_singleton,
}


def consistent_prefix_indices(collection: Collection, inputs,
                              t: int) -> list[int]:
    inputs = frozenset(inputs)
    out = []
    for i, lang in enumerate(collection.prefix(t), start=1):
        if all(x in lang.body for x in inputs):
            out.append(i)
    return out


def critical_indices(collection: Collection, inputs, t: int,
                     consistent=None) -> list[int]:
    """Consistent prefix indices i_j with L_{i_j} contained in every
    earlier consistent language (a nested chain)."""
    if consistent is None:
        consistent = consistent_prefix_indices(collection, inputs, t)
    critical: list[int] = []
    last_body = None
    for i in consistent:
        body = collection.language(i).body
        if last_body is None or _subset_cached(body, last_body):
            critical.append(i)
            last_body = body
    return critical


def km_critical_next(collection: Collection, inputs, t: int) -> int:
    """Generate from the last critical language of the consistent
    prefix."""
    chain = critical_indices(collection, inputs, t)
    if not chain:
        raise NoConsistentLanguage(f"t={t}, inputs={sorted(inputs)}")
    body = collection.language(chain[-1]).body
    return least_outside(body, frozenset(inputs))


def exhaustive_critical_snapshot(collection: Collection, inputs,
                                 t: int, consistent=None) -> Enumerator:
    """Support = last critical language, patched with the finite
    differences of the other critical (superset) languages."""
    chain = critical_indices(collection, inputs, t, consistent)
    if not chain:
        return Enumerator(intset.empty(), flagged=True)
    base = collection.language(chain[-1]).body
    support = base
    for j in chain[:-1]:
        diff = _difference_cached(collection.language(j).body, base)
        if classify(diff).finite:
            support = support | diff
    return Enumerator(support)


def km_snapshot(collection: Collection, inputs, t: int,
                consistent=None) -> Enumerator:
    """Unpatched variant: support is exactly the last critical language.
    Claims breadth, which fails whenever finitely-different supersets
    exist — the stream a stabilization detector is designed to catch."""
    chain = critical_indices(collection, inputs, t, consistent)
    if not chain:
        return Enumerator(intset.empty(), flagged=True)
    return Enumerator(collection.language(chain[-1]).body)


@dataclass(frozen=True)
class TellTaleProvider:
    """telltale(i, n) -> the finite set enumerated in the first n steps
    of language i's tell-tale; monotone in n and eventually constant."""

    telltale: Callable[[int, int], frozenset[int]]


def empty_telltales() -> TellTaleProvider:
    return TellTaleProvider(lambda i, n: frozenset())


def telltale_snapshot(collection: Collection, provider: TellTaleProvider,
                      inputs, n: int, oracles=None) -> Enumerator:
    """Support = the smallest-index prefix language containing the inputs
    whose partial tell-tale the inputs cover.  Consistency is decided
    through membership queries only."""
    if oracles is None:
        oracles = collection
    inputs = frozenset(inputs)
    size = n if collection.size is None else min(n, collection.size)
    for i in range(1, size + 1):
        if not all(oracles.membership_oracle(i, x) for x in inputs):
            continue
        if provider.telltale(i, n) <= inputs:
            return Enumerator(collection.language(i).body)
    return Enumerator(intset.empty(), flagged=True)


# -- harness-facing strategy objects --------------------------------------

class Generator:
    """step(inputs, outputs_before, t) -> next string or None; strategies
    with symbolic snapshots override snapshot()."""

    provides_snapshot = False

    def step(self, inputs, outputs_before, t: int) -> int | None:
        raise NotImplementedError

    def snapshot(self, inputs, t: int) -> Enumerator | None:
        return None


class GreedyGenerator(Generator):
    def __init__(self, collection: Collection, fast: bool = True):
        self.collection = collection
        self.fast = fast and collection.name in _FAST_GREEDY

    def step(self, inputs, outputs_before, t):
        if self.fast and inputs:
            return _FAST_GREEDY[self.collection.name](frozenset(inputs), t)
        z, _ = greedy_intersection_next(self.collection, inputs, t)
        return z


class KmGenerator(Generator):
    def __init__(self, collection: Collection):
        self.collection = collection
        self.tracker = ConsistencyTracker(collection)

    def step(self, inputs, outputs_before, t):
        consistent = self.tracker.update(frozenset(inputs), t)
        chain = critical_indices(self.collection, inputs, t, consistent)
        if not chain:
            return None
        body = self.collection.language(chain[-1]).body
        return least_outside(body, frozenset(inputs))


class ZigzagGenerator(Generator):
    """Oblivious: walks the canonical order; the skip variant refuses to
    repeat an input."""

    def __init__(self, collection: Collection | None = None,
                 skip_seen: bool = False):
        self.skip_seen = skip_seen
        self.cursor = 0

    def step(self, inputs, outputs_before, t):
        while True:
            z = canon_unrank(self.cursor)
            self.cursor += 1
            if not self.skip_seen or z not in inputs:
                return z


class SnapshotGenerator(Generator):
    """Emits the least unseen element of a per-round snapshot support."""

    provides_snapshot = True

    def __init__(self, collection: Collection,
                 snapshot_fn: Callable[..., Enumerator]):
        self.collection = collection
        self.snapshot_fn = snapshot_fn
        self.tracker = ConsistencyTracker(collection)
        self._memo: tuple | None = None

    def snapshot(self, inputs, t):
        inputs = frozenset(inputs)
        if self._memo is not None and self._memo[0] == (inputs, t):
            return self._memo[1]
        consistent = self.tracker.update(inputs, t)
        snap = self.snapshot_fn(self.collection, inputs, t,
                                consistent=consistent)
        self._memo = ((inputs, t), snap)
        return snap

    def step(self, inputs, outputs_before, t):
        snap = self.snapshot(inputs, t)
        if snap.flagged:
            return None
        excluded = frozenset(inputs) | frozenset(outputs_before)
        body = snap.support - intset.finite(excluded)
        if body.is_empty():
            return None
        return enumerate_rank(body, 0)


class TellTaleGenerator(SnapshotGenerator):
    def __init__(self, collection: Collection,
                 provider: TellTaleProvider | None = None, oracles=None):
        provider = provider or empty_telltales()
        super().__init__(
            collection,
            lambda c, inputs, t, consistent=None: telltale_snapshot(
                c, provider, inputs, t, oracles=oracles))


class FeedbackGenerator(Generator):
    """Adds a query beat: query(...) -> y or None, answers accumulate in
    the yes/no sets passed back to step()."""

    def query(self, inputs, t, yes, no) -> int | None:
        return None

    def step_with_feedback(self, inputs, outputs_before, t, yes,
                           no) -> int | None:
        raise NotImplementedError

    def step(self, inputs, outputs_before, t):
        return self.step_with_feedback(inputs, outputs_before, t,
                                       frozenset(), frozenset())


class ProbeFeedbackGenerator(FeedbackGenerator):
    """Asks a fixed list of probe queries, then generates from the exact
    intersection of the languages consistent with inputs and answers."""

    def __init__(self, collection: Collection, probes=()):
        self.collection = collection
        self.probes = list(probes)

    def query(self, inputs, t, yes, no):
        answered = yes | no
        for p in self.probes:
            if p not in answered:
                return p
        return None

    def step_with_feedback(self, inputs, outputs_before, t, yes, no):
        meet = self.collection.consistent_intersection(inputs, yes, no)
        if meet is None:
            return None
        body = meet - intset.finite(frozenset(inputs)
                                    | frozenset(outputs_before))
        if body.is_empty():
            return None
        return enumerate_rank(body, 0)


# -- membership-query generators (for the dynamic-pair game) -------------

class MqGenerator:
    """Interacts with a membership-query adversary: per phase it may ask
    `ask(w, which) -> bool` questions, then must output a string.
    `declared_bound` is the input count after which it claims validity."""

    name = "mq"
    declared_bound = 1

    def generate(self, inputs: list[int], ask) -> int:
        raise NotImplementedError


def _fresh_candidates(inputs):
    seen = set(inputs)
    k = 0
    while True:
        x = canon_unrank(k)
        k += 1
        if x not in seen:
            yield x


class ClosureProberMq(MqGenerator):
    """Queries a few fresh candidates in both languages and outputs the
    first one claimed by both (falling back to the first candidate)."""

    name = "closure-prober"

    def __init__(self, declared_bound=2, probes=3):
        self.declared_bound = declared_bound
        self.probes = probes

    def generate(self, inputs, ask):
        fallback = None
        for x, _ in zip(_fresh_candidates(inputs), range(self.probes)):
            if fallback is None:
                fallback = x
            if ask(x, 0) and ask(x, 1):
                return x
        return fallback


class FirstYesMq(MqGenerator):
    """Outputs the first fresh candidate reported inside language 0."""

    name = "first-yes"

    def __init__(self, declared_bound=2, probes=8):
        self.declared_bound = declared_bound
        self.probes = probes

    def generate(self, inputs, ask):
        fallback = None
        for x, _ in zip(_fresh_candidates(inputs), range(self.probes)):
            if fallback is None:
                fallback = x
            if ask(x, 0):
                return x
        return fallback


class ScriptedMq(MqGenerator):
    """Replays a fixed output script, never querying; past the script it
    outputs fresh candidates."""

    name = "scripted"

    def __init__(self, script=(17, -17, 23), declared_bound=2):
        self.script = list(script)
        self.declared_bound = declared_bound
        self.position = 0

    def generate(self, inputs, ask):
        if self.position < len(self.script):
            z = self.script[self.position]
            self.position += 1
            return z
        return next(_fresh_candidates(inputs))


MQ_GENERATORS = {
    "closure-prober": ClosureProberMq,
    "first-yes": FirstYesMq,
    "scripted": ScriptedMq,
}


def build_generator(name: str, collection: Collection,
                    **params) -> Generator:
    if name == "greedy":
        return GreedyGenerator(collection)
    if name == "km":
        return KmGenerator(collection)
    if name == "zigzag":
        return ZigzagGenerator(collection, **params)
    if name == "exhaustive-critical":
        return SnapshotGenerator(collection, exhaustive_critical_snapshot)
    if name == "km-snapshot":
        return SnapshotGenerator(collection, km_snapshot)
    if name == "telltale":
        return TellTaleGenerator(collection, **params)
    if name == "probe-feedback":
        return ProbeFeedbackGenerator(collection, **params)
    raise ValueError(f"unknown generator {name!r}")


GENERATOR_NAMES = ("greedy", "km", "zigzag", "exhaustive-critical",
                   "km-snapshot", "telltale", "probe-feedback")
