"""Enumeration strategies, including the constructive lower-bound
adversaries, each parameterized by the generator it is trying to defeat.

Every adversary commits to a target language and only ever feeds inputs
from it; a claimed violation carries enough raw data for the harness to
recompute the violated clause from scratch, and is only reported after
that recomputation confirms it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import intset
from .collection import (BOTH, UNASSIGNED, Collection, DynamicLanguagePair)
from .generators import Generator, MqGenerator
from .intset import SymbolicSet, canon_rank, canon_unrank, classify, \
    enumerate_rank


# -- fair enumerators -----------------------------------------------------

class FairEnumerator:
    """Enumerates a fixed language; every element appears eventually.

    Schedules: "canonical" walks the canonical order; "permuted" shuffles
    consecutive canonical blocks with a seeded RNG (still covering the
    whole language); "scripted" replays a validated list and then
    completes canonically, skipping what the script already emitted.
    """

    def __init__(self, body: SymbolicSet, schedule: str = "canonical",
                 seed: int = 0, script=(), block: int = 16):
        if classify(body).finite:
            raise ValueError("target language must be infinite")
        self.body = body
        self.schedule = schedule
        self.cursor = 0
        self._stream = body.members()
        self.buffer: list[int] = []
        self.rng = random.Random(seed)
        self.block = block
        self.script = list(script)
        for x in self.script:
            if x not in body:
                raise ValueError(f"scripted element {x} not in target")
        self.emitted: set[int] = set()

    def _canonical_next(self) -> int:
        self.cursor += 1
        return next(self._stream)

    def next_input(self) -> int:
        if self.schedule == "scripted":
            if self.script:
                x = self.script.pop(0)
                self.emitted.add(x)
                return x
            while True:
                x = self._canonical_next()
                if x not in self.emitted:
                    self.emitted.add(x)
                    return x
        if self.schedule == "permuted":
            if not self.buffer:
                self.buffer = [self._canonical_next()
                               for _ in range(self.block)]
                self.rng.shuffle(self.buffer)
            return self.buffer.pop()
        return self._canonical_next()


def fair_enumerator(body: SymbolicSet, schedule: str = "canonical",
                    **params) -> FairEnumerator:
    return FairEnumerator(body, schedule, **params)


# -- the membership-query adversary ---------------------------------------

@dataclass
class MqAdversaryState:
    pair: DynamicLanguagePair = field(default_factory=DynamicLanguagePair)
    phase: int = 0
    declared: int | None = None
    log: list[tuple] = field(default_factory=list)


def mq_adversary_step(state: MqAdversaryState, event: tuple):
    """Process one interaction event.

    Events: ("need_input",) -> ("input", x) with x placed in both
    languages; ("query", w, which) -> ("answer", bool), placing an
    unassigned w via the toggle first; ("generated", z) -> ("placed",
    status), likewise toggling unassigned strings.
    """
    assert state.declared is None, "adversary already committed"
    kind = event[0]
    if kind == "need_input":
        x = state.pair.fresh()
        state.pair.place_both(x)
        state.phase += 1
        state.log.append(("input", x))
        return ("input", x)
    if kind == "query":
        _, w, which = event
        if state.pair.status(w) == UNASSIGNED:
            state.pair.place_toggle(w)
        answer = state.pair.in_language(w, which)
        state.log.append(("query", w, which, answer))
        return ("answer", answer)
    if kind == "generated":
        _, z = event
        if state.pair.status(z) == UNASSIGNED:
            state.pair.place_toggle(z)
        state.log.append(("generated", z, state.pair.status(z)))
        return ("placed", state.pair.status(z))
    raise ValueError(f"unknown event {event!r}")


def mq_commit(state: MqAdversaryState, z: int) -> int:
    """Choose the true language so the generated z is a mistake: the side
    z was not placed on (either side works when z repeated an input)."""
    status = state.pair.status(z)
    declared = 0 if status == 1 else 1 if status == 0 else 0
    state.declared = declared
    state.log.append(("commit", declared))
    return declared


@dataclass
class MqGameReport:
    generator_name: str
    declared_bound: int
    mistake_phase: int | None
    mistake_output: int | None
    declared: int | None
    log: tuple
    verdict: str


def run_mq_game(generator: MqGenerator, max_phases: int,
                query_budget: int = 32) -> MqGameReport:
    """Drive phases of input/queries/output until a committable mistake
    appears at or after the generator's declared bound."""
    state = MqAdversaryState()
    inputs: list[int] = []
    for phase in range(1, max_phases + 1):
        _, x = mq_adversary_step(state, ("need_input",))
        inputs.append(x)
        budget = [query_budget]

        def ask(w, which):
            if budget[0] <= 0:
                raise RuntimeError("query budget exhausted")
            budget[0] -= 1
            _, ans = mq_adversary_step(state, ("query", w, which))
            return ans

        z = generator.generate(list(inputs), ask)
        mq_adversary_step(state, ("generated", z))
        if phase >= generator.declared_bound:
            status = state.pair.status(z)
            repeat = z in inputs
            if repeat or status in (0, 1):
                declared = mq_commit(state, z)
                return MqGameReport(
                    generator_name=generator.name,
                    declared_bound=generator.declared_bound,
                    mistake_phase=phase, mistake_output=z,
                    declared=declared, log=tuple(state.log),
                    verdict="mistake-forced")
    return MqGameReport(generator_name=generator.name,
                        declared_bound=generator.declared_bound,
                        mistake_phase=None, mistake_output=None,
                        declared=None, log=tuple(state.log),
                        verdict="inconclusive")


# -- stabilization detection and lower-bound drivers ----------------------

@dataclass(frozen=True)
class StabilizationDetector:
    """transparent: decide stabilization exactly from symbolic snapshots;
    windowed: best-effort patience-based heuristic for opaque output."""

    mode: str = "transparent"
    patience: int = 8

    def finite_difference(self, support: SymbolicSet,
                          body: SymbolicSet) -> bool:
        return classify(support - body).finite

    def exact_equality(self, support: SymbolicSet,
                       body: SymbolicSet) -> bool:
        return support == body


@dataclass(frozen=True)
class ViolationClaim:
    """Raw data of a claimed violation, sufficient for recomputation."""

    kind: str  # "exhaustive-clause2" | "breadth-inequality" | "mq-mistake"
    collection: str
    target: SymbolicSet
    round: int
    inputs: tuple[int, ...]
    outputs_before: tuple[int, ...]
    support: SymbolicSet | None


@dataclass
class LowerBoundReport:
    trace: list[tuple]
    claim: ViolationClaim | None
    verdict: str  # "violation" | "inconclusive"
    rounds: int


def run_exhaustive_lb(collection: Collection, generator: Generator,
                      detector: StabilizationDetector | None = None,
                      max_phases: int = 4, horizon: int = 500
                      ) -> LowerBoundReport:
    """Phased enumeration of the whole-line target against a snapshot
    generator on the nested-tails collection: each phase enumerates one
    tail until the snapshot stabilizes onto it, then extends one step
    left.  At a stabilized round, coverage of the full target fails."""
    assert generator.provides_snapshot
    detector = detector or StabilizationDetector()
    target = intset.universe()
    inputs: list[int] = []
    outputs: list[int] = []
    trace: list[tuple] = []
    claim = None
    t = 0
    prev_t_phase = 0
    for phase in range(max_phases):
        phase_body = intset.tail(-phase)
        value = -phase
        t_star = None
        while t < horizon:
            t += 1
            inputs.append(value)
            value += 1
            seen = frozenset(inputs)
            snap = generator.snapshot(seen, t)
            z = generator.step(seen, frozenset(outputs), t)
            if z is not None:
                outputs.append(z)
            if snap is not None and not snap.flagged and \
                    detector.finite_difference(snap.support, phase_body):
                if t_star is None:
                    t_star = t
                if t >= prev_t_phase + 1:
                    break
        if t_star is None:
            return LowerBoundReport(trace, None, "inconclusive", t)
        t_phase = max(t_star, prev_t_phase + 1)
        prev_t_phase = t_phase
        trace.append((phase, t_star, t_phase))
        snap = generator.snapshot(frozenset(inputs), t)
        uncovered = target - (snap.support
                              | intset.finite(set(inputs) | set(outputs)))
        if not uncovered.is_empty():
            claim = ViolationClaim(
                kind="exhaustive-clause2", collection=collection.name,
                target=target, round=t, inputs=tuple(inputs),
                outputs_before=tuple(outputs[:-1]), support=snap.support)
    if claim is None:
        return LowerBoundReport(trace, None, "inconclusive", t)
    return LowerBoundReport(trace, claim, "violation", t)


def breadth_next(x: int) -> int:
    """The element after x in the canonical sequence 0, -1, 1, -2, 2, ..."""
    return canon_unrank(canon_rank(x) + 1)


def run_breadth_lb(collection: Collection, generator: Generator,
                   detector: StabilizationDetector | None = None,
                   max_phases: int = 3, horizon: int = 200
                   ) -> LowerBoundReport:
    """Phased enumeration of the whole line that always omits one element;
    when the snapshot equals exactly the co-singleton language at the
    omitted element, that snapshot differs from the committed target."""
    assert generator.provides_snapshot
    detector = detector or StabilizationDetector()
    target = intset.universe()
    omitted = 0
    inputs: list[int] = []
    outputs: list[int] = []
    backlog: list[int] = []  # formerly-omitted elements to re-insert
    cursor = 0  # canonical rank frontier
    trace: list[tuple] = []
    claim = None
    t = 0
    for phase in range(max_phases):
        phase_body = intset.cofinite({omitted})
        detected = False
        while t < horizon:
            t += 1
            if backlog:
                x = backlog.pop(0)
            else:
                while canon_unrank(cursor) == omitted:
                    cursor += 1
                x = canon_unrank(cursor)
                cursor += 1
            inputs.append(x)
            seen = frozenset(inputs)
            snap = generator.snapshot(seen, t)
            z = generator.step(seen, frozenset(outputs), t)
            if z is not None:
                outputs.append(z)
            if snap is not None and not snap.flagged and \
                    detector.exact_equality(snap.support, phase_body):
                trace.append((phase, omitted, t))
                claim = claim or ViolationClaim(
                    kind="breadth-inequality", collection=collection.name,
                    target=target, round=t, inputs=tuple(inputs),
                    outputs_before=tuple(outputs[:-1]),
                    support=snap.support)
                detected = True
                break
        if not detected:
            return LowerBoundReport(trace, claim,
                                    "violation" if claim else
                                    "inconclusive", t)
        backlog.append(omitted)
        frontier = canon_unrank(cursor - 1)
        omitted = breadth_next(frontier)
    return LowerBoundReport(trace, claim,
                            "violation" if claim else "inconclusive", t)


# -- staged tell-tale negation witnesses ----------------------------------

@dataclass
class ExistenceReport:
    verdict: str  # "witnesses-at-every-stage" | "condition-satisfied"
    #              | "inconclusive"
    stages: list[tuple]
    enumerated: tuple[int, ...]


def find_negation_witness(collection: Collection, target: SymbolicSet,
                          seen, index_budget: int = 64) -> int | None:
    """Smallest index of a proper infinite-deficit sublanguage of the
    target containing everything seen so far."""
    seen = frozenset(seen)
    size = index_budget if collection.size is None \
        else min(index_budget, collection.size)
    for k in range(1, size + 1):
        body = collection.language(k).body
        if not all(x in body for x in seen):
            continue
        if not intset.is_subset(body, target) or body == target:
            continue
        if classify(target - body).finite:
            continue
        return k
    return None


def run_existence_violation(collection: Collection, target: SymbolicSet,
                            stages: int = 5, index_budget: int = 64,
                            emit_per_stage: int = 3) -> ExistenceReport:
    """At each stage, find a witness sublanguage and enumerate a few of
    its unseen elements; a witness at every stage realizes the negation
    of the tell-tale existence condition for this target."""
    seen: list[int] = []
    stage_records: list[tuple] = []
    for stage in range(stages):
        k = find_negation_witness(collection, target, seen, index_budget)
        if k is None:
            verdict = ("condition-satisfied" if stage == 0
                       else "inconclusive")
            return ExistenceReport(verdict, stage_records, tuple(seen))
        body = collection.language(k).body
        emitted = []
        rank = 0
        while len(emitted) < emit_per_stage:
            x = enumerate_rank(body, rank)
            rank += 1
            if x not in seen:
                emitted.append(x)
                seen.append(x)
        stage_records.append((stage, k, tuple(emitted)))
    return ExistenceReport("witnesses-at-every-stage", stage_records,
                           tuple(seen))


# -- the echo adversary for the feedback game -----------------------------

def echo_feedback_play(queries, d: int):
    """Play d feedback rounds against a generator whose queries are the
    given sequence.

    Inputs are fresh ascending positive integers, except that a query
    about a string not yet among the inputs is echoed back as the next
    input.  Every answer is yes apart from the last, which is truthful
    about the input set.  Returns the finished transcript.
    """
    from .transcripts import FeedbackTranscript, NO, YES
    assert len(queries) == d
    rounds = []
    inputs: list[int] = []
    prev_y = None
    for t in range(1, d + 1):
        if prev_y is not None and prev_y not in inputs:
            x = prev_y
        else:
            x = max([v for v in inputs if v >= 1], default=0) + 1
        inputs.append(x)
        y = queries[t - 1]
        a = YES if t < d else (YES if y in inputs else NO)
        rounds.append((x, y, a, 0))
        prev_y = y
    return FeedbackTranscript(tuple(rounds))


ADVERSARY_NAMES = ("fair", "mq", "exhaustive-lb", "breadth-lb",
                   "existence-violation")
