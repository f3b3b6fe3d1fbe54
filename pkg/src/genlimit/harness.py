"""Transcript engine, definition checkers, and violation re-verification.

A run drives one adversary/generator interleaving for a fixed horizon and
records, per round, the validity flag of the emitted string (it must lie
in the target and be previously unseen).  Reports are line-delimited JSON
with a fixed field order per round — `t, x, y?, a?, z, valid, snapshot?` —
followed by one summary record `{t_star, violations, verdict}`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import intset
from .adversaries import ViolationClaim, fair_enumerator
from .collection import Collection, build_collection
from .generators import (Enumerator, FeedbackGenerator, Generator,
                         build_generator, nonuniform_bound)
from .intset import SymbolicSet, classify, format_set
from .transcripts import NO, YES, FeedbackTranscript, Transcript


@dataclass(frozen=True)
class RunConfig:
    collection: str
    target_index: int
    generator: str
    mode: str = "plain"  # plain | feedback | exhaustive
    schedule: str = "canonical"
    seed: int = 0
    script: tuple[int, ...] = ()
    horizon: int = 50
    generator_params: tuple = ()

    def __post_init__(self):
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")
        if self.mode not in ("plain", "feedback", "exhaustive"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class RoundRecord:
    t: int
    x: int
    z: int | None
    valid: bool
    y: int | None = None
    a: str | None = None
    snapshot: SymbolicSet | None = None


@dataclass
class RunResult:
    config: RunConfig
    transcript: Transcript | FeedbackTranscript
    records: list[RoundRecord]
    target: SymbolicSet

    @property
    def flags(self) -> list[bool]:
        return [r.valid for r in self.records]

    def stable_t_star(self) -> int | None:
        """Least round from which every later flag is valid (horizon-
        relative upper estimate)."""
        t_star = None
        for r in reversed(self.records):
            if r.valid:
                t_star = r.t
            else:
                break
        return t_star

    def summary(self) -> dict:
        t_star = self.stable_t_star()
        violations = sum(1 for r in self.records if not r.valid)
        verdict = "stable" if t_star is not None else "unstable"
        return {"t_star": t_star, "violations": violations,
                "verdict": verdict}


def _build_run(cfg: RunConfig):
    collection = build_collection(cfg.collection)
    target = collection.language(cfg.target_index).body
    enum = fair_enumerator(target, cfg.schedule, seed=cfg.seed,
                           script=list(cfg.script))
    generator = build_generator(cfg.generator, collection,
                                **dict(cfg.generator_params))
    return collection, target, enum, generator


def run_transcript(cfg: RunConfig) -> RunResult:
    _, target, enum, generator = _build_run(cfg)
    want_snapshots = cfg.mode == "exhaustive"
    if want_snapshots and not generator.provides_snapshot:
        raise ValueError(f"generator {cfg.generator!r} has no snapshots")
    rounds: list[tuple] = []
    records: list[RoundRecord] = []
    inputs: set[int] = set()
    outputs: set[int] = set()
    for t in range(1, cfg.horizon + 1):
        x = enum.next_input()
        inputs.add(x)
        snap = generator.snapshot(frozenset(inputs), t) \
            if want_snapshots else None
        z = generator.step(frozenset(inputs), frozenset(outputs), t)
        valid = z is not None and z in target and z not in inputs
        rounds.append((x, z))
        if z is not None:
            outputs.add(z)
        records.append(RoundRecord(
            t=t, x=x, z=z, valid=valid,
            snapshot=None if snap is None else snap.support))
    return RunResult(cfg, Transcript(tuple(rounds)), records, target)


def run_feedback_transcript(cfg: RunConfig) -> RunResult:
    _, target, enum, generator = _build_run(cfg)
    transcript = FeedbackTranscript()
    records: list[RoundRecord] = []
    inputs: set[int] = set()
    outputs: set[int] = set()
    yes: set[int] = set()
    no: set[int] = set()
    for t in range(1, cfg.horizon + 1):
        x = enum.next_input()
        inputs.add(x)
        seen = frozenset(inputs)
        if isinstance(generator, FeedbackGenerator):
            y = generator.query(seen, t, frozenset(yes), frozenset(no))
        else:
            y = None
        if y is None:
            y = x  # degenerate round: query something already answered
        a = YES if y in target else NO
        (yes if a == YES else no).add(y)
        if isinstance(generator, FeedbackGenerator):
            z = generator.step_with_feedback(
                seen, frozenset(outputs), t, frozenset(yes),
                frozenset(no))
        else:
            z = generator.step(seen, frozenset(outputs), t)
        valid = z is not None and z in target and z not in inputs
        transcript = transcript.extended(x, y, a, z)
        if z is not None:
            outputs.add(z)
        records.append(RoundRecord(t=t, x=x, z=z, valid=valid, y=y, a=a))
    return RunResult(cfg, transcript, records, target)


# -- definition checkers --------------------------------------------------

@dataclass
class CheckReport:
    verdict: str
    t_star: int | None
    violations: list[tuple]
    detail: dict = field(default_factory=dict)


def check_nonuniform(collection_name: str, generator_name: str,
                     target_index: int, schedules, horizon: int
                     ) -> CheckReport:
    """The emitted string must be valid at every round where the distinct
    input count reaches the target's non-uniform bound, for every
    enumeration schedule in the family."""
    collection = build_collection(collection_name)
    bound = nonuniform_bound(collection, target_index)
    violations: list[tuple] = []
    for label, schedule, seed, script in schedules:
        cfg = RunConfig(collection=collection_name,
                        target_index=target_index,
                        generator=generator_name, schedule=schedule,
                        seed=seed, script=tuple(script), horizon=horizon)
        result = run_transcript(cfg)
        seen: set[int] = set()
        for rec in result.records:
            seen.add(rec.x)
            if len(seen) >= bound and not rec.valid:
                violations.append((label, rec.t, rec.z))
    verdict = "ok" if not violations else "violated"
    return CheckReport(verdict, bound, violations,
                       {"bound": bound, "target_index": target_index})


def exhaustive_clauses(target: SymbolicSet, support: SymbolicSet,
                       inputs, outputs_before) -> tuple[bool, bool]:
    """Clause 1: only finitely many emissions can fall outside the
    target.  Clause 2: inputs, past outputs and the snapshot jointly
    cover the target."""
    clause1 = classify(support - target).finite
    covered = support | intset.finite(set(inputs) | set(outputs_before))
    clause2 = (target - covered).is_empty()
    return clause1, clause2


def check_exhaustive(result: RunResult, probe_rounds=None) -> CheckReport:
    target = result.target
    probes = list(probe_rounds) if probe_rounds is not None else \
        [r.t for r in result.records]
    failures: list[tuple] = []
    statuses: dict[int, bool] = {}
    for rec in result.records:
        if rec.t not in probes:
            continue
        if rec.snapshot is None:
            raise ValueError("exhaustive check requires snapshots")
        inputs = result.transcript.inputs_through(rec.t)
        before = result.transcript.outputs_before(rec.t)
        c1, c2 = exhaustive_clauses(target, rec.snapshot, inputs, before)
        statuses[rec.t] = c1 and c2
        if not (c1 and c2):
            failures.append((rec.t, c1, c2))
    t_star = None
    for t in sorted(statuses, reverse=True):
        if statuses[t]:
            t_star = t
        else:
            break
    verdict = "stable" if t_star is not None else "never-stable"
    return CheckReport(verdict, t_star, failures)


def check_breadth(result: RunResult, probe_rounds=None) -> CheckReport:
    target = result.target
    probes = list(probe_rounds) if probe_rounds is not None else \
        [r.t for r in result.records]
    failures: list[tuple] = []
    statuses: dict[int, bool] = {}
    for rec in result.records:
        if rec.t not in probes:
            continue
        if rec.snapshot is None:
            raise ValueError("breadth check requires snapshots")
        equal = rec.snapshot == target
        statuses[rec.t] = equal
        if not equal:
            failures.append((rec.t, format_set(rec.snapshot)))
    t_star = None
    for t in sorted(statuses, reverse=True):
        if statuses[t]:
            t_star = t
        else:
            break
    verdict = "stable" if t_star is not None else "never-stable"
    return CheckReport(verdict, t_star, failures)


# -- violation re-verification --------------------------------------------

def verify_violation(claim: ViolationClaim,
                     generator_factory=None) -> str:
    """Recompute the violated clause from the claim's raw data; when a
    generator factory is supplied, additionally replay the inputs through
    a fresh generator and reject any snapshot mismatch.  Membership-query
    game reports are dispatched to their own replay verifier."""
    if hasattr(claim, "log"):
        return verify_mq_report(claim)
    if any(x not in claim.target for x in claim.inputs):
        return "rejected"
    if generator_factory is not None:
        generator = generator_factory()
        replayed: Enumerator | None = None
        seen: set[int] = set()
        outputs: set[int] = set()
        for t, x in enumerate(claim.inputs, start=1):
            seen.add(x)
            replayed = generator.snapshot(frozenset(seen), t)
            z = generator.step(frozenset(seen), frozenset(outputs), t)
            if z is not None:
                outputs.add(z)
        if replayed is None or replayed.support != claim.support:
            return "rejected"
    if claim.kind == "exhaustive-clause2":
        c1, c2 = exhaustive_clauses(claim.target, claim.support,
                                    claim.inputs, claim.outputs_before)
        return "confirmed" if c1 and not c2 else "rejected"
    if claim.kind == "breadth-inequality":
        return "confirmed" if claim.support != claim.target \
            else "rejected"
    return "rejected"


def verify_mq_report(report) -> str:
    """Replay the interaction log through a fresh dynamic pair and check
    that the mistaken output really misses the committed language."""
    from .adversaries import MqAdversaryState, mq_adversary_step
    state = MqAdversaryState()
    inputs: list[int] = []
    for entry in report.log:
        if entry[0] == "input":
            kind, x = mq_adversary_step(state, ("need_input",))
            if x != entry[1]:
                return "rejected"
            inputs.append(x)
        elif entry[0] == "query":
            _, ans = mq_adversary_step(state,
                                       ("query", entry[1], entry[2]))
            if ans != entry[3]:
                return "rejected"
        elif entry[0] == "generated":
            mq_adversary_step(state, ("generated", entry[1]))
    z = report.mistake_output
    if z is None or report.declared is None:
        return "rejected"
    mistaken = z in inputs or not state.pair.in_language(
        z, report.declared)
    return "confirmed" if mistaken else "rejected"


# -- line-delimited report format -----------------------------------------

def record_rows(result: RunResult) -> list[dict]:
    feedback = isinstance(result.transcript, FeedbackTranscript)
    rows = []
    for rec in result.records:
        row: dict = {"t": rec.t, "x": rec.x}
        if feedback:
            row["y"] = rec.y
            row["a"] = rec.a
        row["z"] = rec.z
        row["valid"] = rec.valid
        if rec.snapshot is not None:
            row["snapshot"] = format_set(rec.snapshot)
        rows.append(row)
    return rows


def render_report(result: RunResult) -> str:
    lines = [json.dumps(row, separators=(", ", ": "))
             for row in record_rows(result)]
    summary = {"summary": result.summary()}
    lines.append(json.dumps(summary, separators=(", ", ": ")))
    return "\n".join(lines) + "\n"


def write_report(result: RunResult, path) -> None:
    with open(path, "w") as handle:
        handle.write(render_report(result))
