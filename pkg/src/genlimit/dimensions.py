"""Combinatorial complexity measures of a language collection.

Covers the non-uniform complexity of an indexed language, closure-dimension
witnesses, consistent-language sets, exact effective intersections, and
bounded game searches for the no-feedback / with-feedback game dimensions.

Soundness note for the game searches: a returned witness is verified
unconditionally, while `None` only means "no witness within this budget"
and is not a proof that the dimension is below d.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import intset
from .collection import Collection
from .intset import SymbolicSet, canon_rank, classify
from .transcripts import FeedbackTranscript, Transcript


def nonuniform_complexity(collection: Collection, i: int) -> int:
    """Largest finite-intersection cardinality over subcollections of the
    first i languages that include language i; 0 if none is finite."""
    body_i = collection.language(i).body
    best = 0
    others = [collection.language(j).body for j in range(1, i)]
    for r in range(len(others) + 1):
        for combo in itertools.combinations(others, r):
            meet = body_i
            for b in combo:
                meet = meet & b
            c = classify(meet)
            if c.finite:
                best = max(best, c.cardinality)
    return best


@dataclass(frozen=True)
class DimensionWitness:
    d: int
    witness_set: frozenset[int] | None
    witness_play: Transcript | FeedbackTranscript | None
    certificate: SymbolicSet


@dataclass(frozen=True)
class GameBudget:
    max_rounds: int
    window: int  # legal moves are the integers in [-window, window]
    branch_cap: int = 100_000

    def moves(self) -> list[int]:
        return sorted(range(-self.window, self.window + 1), key=canon_rank)


def closure_witness(collection: Collection, d: int,
                    window: int, max_extra: int = 64
                    ) -> DimensionWitness | None:
    """Search for a size-d set whose containing languages have finite
    intersection; candidates are drawn from [-window, window]."""
    if d < 1:
        raise ValueError("d must be >= 1")
    moves = sorted(range(-window, window + 1), key=canon_rank)
    for combo in itertools.combinations(moves, d):
        s = frozenset(combo)
        meet = collection.consistent_intersection(s)
        if meet is None:
            continue
        c = classify(meet)
        if c.finite and c.cardinality <= d + max_extra:
            return DimensionWitness(d=d, witness_set=s, witness_play=None,
                                    certificate=meet)
    return None


def consistent_languages(collection: Collection,
                         transcript: Transcript | FeedbackTranscript,
                         r: int, prefix: int) -> list[int]:
    """Indices (within the first `prefix` languages) consistent with the
    transcript through round r."""
    inputs = transcript.inputs_through(r)
    if isinstance(transcript, FeedbackTranscript):
        yes, no = transcript.answers_through(r)
    else:
        yes, no = frozenset(), frozenset()
    out = []
    n = prefix if collection.size is None else min(prefix, collection.size)
    for i in range(1, n + 1):
        body = collection.language(i).body
        if all(x in body for x in inputs | yes) and \
                all(x not in body for x in no):
            out.append(i)
    return out


def effective_intersection(collection: Collection,
                           transcript: Transcript | FeedbackTranscript,
                           r: int) -> SymbolicSet:
    """(∩ consistent languages) \\ S_r over the full collection, exact.

    Round 0 follows the zero-languages convention and returns the whole
    universe.
    """
    if r == 0:
        return intset.universe()
    inputs = transcript.inputs_through(r)
    if isinstance(transcript, FeedbackTranscript):
        yes, no = transcript.answers_through(r)
    else:
        yes, no = frozenset(), frozenset()
    meet = collection.consistent_intersection(inputs, yes, no)
    if meet is None:
        raise ValueError("no consistent language; malformed transcript")
    return meet - intset.finite(inputs)


def gnf_witness(collection: Collection, d: int,
                budget: GameBudget) -> DimensionWitness | None:
    """Bounded search for a no-feedback game witness.

    Without feedback the generator's moves cannot influence which
    languages stay consistent, so a witness is a fixed input sequence: the
    elements of a finite closure certificate played in full.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    base = closure_witness(collection, d, budget.window,
                           max_extra=budget.max_rounds)
    if base is None:
        return None
    closure = sorted(base.certificate.explicit, key=canon_rank)
    if len(closure) > budget.max_rounds or len(closure) < d:
        return None
    rounds = [(x, 0) for x in closure]  # generator replies are irrelevant
    play = Transcript(rounds=tuple(rounds))
    r = len(closure)
    assert len(play.inputs_through(r)) >= d
    assert effective_intersection(collection, play, r).is_empty()
    return DimensionWitness(d=d, witness_set=base.witness_set,
                            witness_play=play,
                            certificate=base.certificate)


def gf_witness(collection: Collection, d: int,
               budget: GameBudget) -> DimensionWitness | None:
    """Bounded search for a with-feedback game witness.

    The adversary's strategy tree must beat every generator strategy whose
    queries range over the move window; the search is a backward induction
    over (inputs, yes-answers, no-answers) states.  Generated strings are
    ignored: they never constrain consistency.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    moves = budget.moves()
    seen: dict[tuple, bool] = {}

    def state_wins(members: frozenset[int], yes: frozenset[int],
                   no: frozenset[int], depth: int) -> bool:
        r = depth
        if r >= d and len(members) >= d:
            meet = collection.consistent_intersection(members, yes, no)
            if meet is not None and \
                    (meet - intset.finite(members)).is_empty():
                return True
        if depth >= budget.max_rounds:
            return False
        key = (members, yes, no, depth)
        if key in seen:
            return seen[key]
        if len(seen) >= budget.branch_cap:
            return False  # out of search budget; treat as no-witness
        result = False
        for x in moves:
            if x in no:
                continue
            m2 = members | {x}
            if collection.consistent_intersection(m2, yes, no) is None:
                continue
            # Generator now queries any y; the adversary must have a
            # winning answer for all of them.
            ok = True
            for y in moves:
                good = False
                for ans in (True, False):
                    y2 = yes | {y} if ans else yes
                    n2 = no if ans else no | {y}
                    if (m2 | y2) & n2:
                        continue
                    if collection.consistent_intersection(m2, y2, n2) \
                            is None:
                        continue
                    if state_wins(m2, y2, n2, depth + 1):
                        good = True
                        break
                if not good:
                    ok = False
                    break
            if ok:
                result = True
                break
        seen[key] = result
        return result

    if not state_wins(frozenset(), frozenset(), frozenset(), 0):
        return None
    # Reconstruct one branch (against the generator that always queries
    # the canonically-least move) for the witness record.
    members: frozenset[int] = frozenset()
    yes: frozenset[int] = frozenset()
    no: frozenset[int] = frozenset()
    rounds: list[tuple[int, int, str, int]] = []
    depth = 0
    while True:
        r = depth
        if r >= d and len(members) >= d:
            meet = collection.consistent_intersection(members, yes, no)
            if meet is not None and \
                    (meet - intset.finite(members)).is_empty():
                break
        advanced = False
        for x in moves:
            if x in no:
                continue
            m2 = members | {x}
            if collection.consistent_intersection(m2, yes, no) is None:
                continue
            y = moves[0]
            for ans in (True, False):
                y2 = yes | {y} if ans else yes
                n2 = no if ans else no | {y}
                if (m2 | y2) & n2:
                    continue
                if collection.consistent_intersection(m2, y2, n2) is None:
                    continue
                if state_wins(m2, y2, n2, depth + 1):
                    rounds.append((x, y, "yes" if ans else "no", 0))
                    members, yes, no = m2, y2, n2
                    depth += 1
                    advanced = True
                    break
            if advanced:
                break
        if not advanced:
            return None
    play = FeedbackTranscript(rounds=tuple(rounds))
    meet = collection.consistent_intersection(members, yes, no)
    return DimensionWitness(d=d, witness_set=frozenset(members),
                            witness_play=play, certificate=meet)
