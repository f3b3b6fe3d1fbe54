import dataclasses

import pytest

from genlimit import intset
from genlimit.adversaries import (run_breadth_lb, run_exhaustive_lb,
                                  run_mq_game)
from genlimit.collection import build_collection
from genlimit.generators import MQ_GENERATORS, build_generator
from genlimit.harness import (
    CheckReport, RunConfig, check_breadth, check_exhaustive,
    check_nonuniform, exhaustive_clauses, render_report,
    run_feedback_transcript, run_transcript, verify_mq_report,
    verify_violation, write_report,
)

GOLDEN_PLAIN = """\
{"t": 1, "x": -1, "z": 0, "valid": false}
{"t": 2, "x": 1, "z": -2, "valid": true}
{"t": 3, "x": -2, "z": 2, "valid": true}
{"summary": {"t_star": 2, "violations": 1, "verdict": "stable"}}
"""

GOLDEN_FEEDBACK = """\
{"t": 1, "x": 1, "y": -2, "a": "yes", "z": -2, "valid": true}
{"t": 2, "x": -2, "y": -2, "a": "yes", "z": -4, "valid": true}
{"summary": {"t_star": 1, "violations": 0, "verdict": "stable"}}
"""


def test_plain_report_golden():
    cfg = RunConfig("cofinite1", 2, "greedy", horizon=3)
    assert render_report(run_transcript(cfg)) == GOLDEN_PLAIN


def test_feedback_report_golden():
    cfg = RunConfig("evenodd", 1, "probe-feedback", mode="feedback",
                    horizon=2, generator_params=(("probes", (-2,)),))
    assert render_report(run_feedback_transcript(cfg)) == GOLDEN_FEEDBACK


def test_exhaustive_report_carries_snapshots():
    cfg = RunConfig("cofinite1", 1, "exhaustive-critical",
                    mode="exhaustive", horizon=4)
    report = render_report(run_transcript(cfg))
    assert '"snapshot": ' in report.splitlines()[0]


def test_replay_determinism(tmp_path):
    cfg = RunConfig("cofinite12", 3, "km", schedule="permuted", seed=11,
                    horizon=40)
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    write_report(run_transcript(cfg), a)
    write_report(run_transcript(cfg), b)
    assert a.read_bytes() == b.read_bytes()


def test_flags_match_direct_recomputation():
    cfg = RunConfig("tails", 2, "greedy", schedule="permuted", seed=5,
                    horizon=60)
    result = run_transcript(cfg)
    for rec in result.records:
        seen = result.transcript.inputs_through(rec.t)
        expected = rec.z is not None and rec.z in result.target \
            and rec.z not in seen
        assert rec.valid == expected


def test_sentinel_counts_as_violation():
    # A scripted schedule whose early inputs are consistent with nothing
    # in the evenodd prefix forces the generator to decline.
    cfg = RunConfig("evenodd", 1, "km", schedule="scripted",
                    script=(1, -2), horizon=3)
    result = run_transcript(cfg)
    # Round 2 sees {1, -2}: consistent (E family); all rounds fine here.
    assert all(r.valid or r.t == 1 for r in result.records)
    eo = build_collection("evenodd")
    gen = build_generator("km", eo)
    assert gen.step(frozenset({-1, -2}), frozenset(), 6) is None


def test_check_nonuniform_ok_and_violated():
    schedules = [("canonical", "canonical", 0, ()),
                 ("perm-1", "permuted", 1, ()),
                 ("scripted", "scripted", 0, (5, 7, 9))]
    report = check_nonuniform("cofinite1", "greedy", 2, schedules, 60)
    assert report.verdict == "ok" and not report.violations

    class AlwaysZero:
        provides_snapshot = False

        def step(self, inputs, outputs_before, t):
            return 0

        def snapshot(self, inputs, t):
            return None

    import genlimit.harness as harness
    original = harness.build_generator
    harness.build_generator = \
        lambda name, c, **kw: AlwaysZero() if name == "always-zero" \
        else original(name, c, **kw)
    try:
        report = check_nonuniform("cofinite1", "always-zero", 2,
                                  schedules[:1], 30)
    finally:
        harness.build_generator = original
    assert report.verdict == "violated" and report.violations


def test_check_exhaustive_zigzag_like_behaviour():
    cfg = RunConfig("cofinite1", 1, "exhaustive-critical",
                    mode="exhaustive", horizon=40)
    result = run_transcript(cfg)
    report = check_exhaustive(result)
    assert report.verdict == "stable" and report.t_star <= 10
    breadth = check_breadth(result)
    assert breadth.verdict == "stable"
    # Breadth stability implies exhaustive stability at the same round.
    assert report.t_star <= breadth.t_star


def test_exhaustive_clauses_direct():
    target = intset.cofinite({3})
    c1, c2 = exhaustive_clauses(target, intset.universe(), {0}, {5})
    assert c1 and c2
    c1, c2 = exhaustive_clauses(target, intset.tail(0), {0}, ())
    assert c1 and not c2


def test_verify_violation_confirms_and_rejects():
    tails = build_collection("tails")
    factory = lambda: build_generator("exhaustive-critical", tails)
    report = run_exhaustive_lb(tails, factory())
    assert verify_violation(report.claim, factory) == "confirmed"
    tampered = dataclasses.replace(report.claim,
                                   support=intset.universe())
    assert verify_violation(tampered, factory) == "rejected"
    off_target = dataclasses.replace(
        report.claim, inputs=report.claim.inputs + (10 ** 6,),
        target=intset.tail(0))
    assert verify_violation(off_target) == "rejected"

    cof = build_collection("cofinite1")
    cfactory = lambda: build_generator("km-snapshot", cof)
    breadth = run_breadth_lb(cof, cfactory())
    assert verify_violation(breadth.claim, cfactory) == "confirmed"
    equalized = dataclasses.replace(breadth.claim,
                                    support=breadth.claim.target)
    assert verify_violation(equalized) == "rejected"


def test_verify_mq_report():
    gen = MQ_GENERATORS["first-yes"]()
    report = run_mq_game(gen, max_phases=gen.declared_bound + 2)
    assert verify_mq_report(report) == "confirmed"
    tampered = dataclasses.replace(report, mistake_output=None)
    assert verify_mq_report(tampered) == "rejected"


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig("tails", 1, "greedy", horizon=0)
    with pytest.raises(ValueError):
        RunConfig("tails", 1, "greedy", mode="turbo")
