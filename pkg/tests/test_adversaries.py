import pytest

from genlimit import intset
from genlimit.adversaries import (
    FairEnumerator, MqAdversaryState, breadth_next, fair_enumerator,
    find_negation_witness, mq_adversary_step, mq_commit, run_breadth_lb,
    run_exhaustive_lb, run_existence_violation, run_mq_game,
)
from genlimit.collection import BOTH, build_collection
from genlimit.generators import MQ_GENERATORS, build_generator


def test_fair_canonical_examples():
    f = fair_enumerator(intset.universe())
    assert [f.next_input() for _ in range(5)] == [0, -1, 1, -2, 2]
    f = fair_enumerator(intset.tail(0))
    assert [f.next_input() for _ in range(4)] == [0, 1, 2, 3]


def test_fair_scripted_completes_canonically():
    f = fair_enumerator(intset.cofinite({0}), "scripted",
                        script=[5, 7, 9])
    assert [f.next_input() for _ in range(7)] == [5, 7, 9, -1, 1, -2, 2]
    with pytest.raises(ValueError):
        fair_enumerator(intset.cofinite({0}), "scripted", script=[0])


def test_fair_permuted_covers_and_replays():
    def run():
        f = fair_enumerator(intset.universe(), "permuted", seed=7)
        return [f.next_input() for _ in range(64)]
    first, second = run(), run()
    assert first == second
    assert set(first) == {intset.canon_unrank(k) for k in range(64)}


def test_fair_rejects_finite_targets():
    with pytest.raises(ValueError):
        FairEnumerator(intset.finite({1, 2}))


def test_mq_adversary_step_trace():
    state = MqAdversaryState()
    kind, x = mq_adversary_step(state, ("need_input",))
    assert (kind, x) == ("input", 0)
    assert state.pair.status(0) == BOTH
    kind, ans = mq_adversary_step(state, ("query", 1, 0))
    assert (kind, ans) == ("answer", True)  # placed in L_0, asked about L_0
    assert state.pair.toggle == 1
    kind, ans = mq_adversary_step(state, ("query", 0, 1))
    assert (kind, ans) == ("answer", True)  # both-assigned, toggle unmoved
    assert state.pair.toggle == 1
    kind, status = mq_adversary_step(state, ("generated", -2))
    assert status == 1 and state.pair.toggle == 0
    declared = mq_commit(state, -2)
    assert declared == 0  # -2 sits only in L_1, so the truth is L_0


@pytest.mark.parametrize("name", sorted(MQ_GENERATORS))
def test_mq_game_forces_mistake(name):
    gen = MQ_GENERATORS[name]()
    report = run_mq_game(gen, max_phases=gen.declared_bound + 2)
    assert report.verdict == "mistake-forced"
    assert report.mistake_phase <= gen.declared_bound + 2
    # The committed language genuinely excludes the mistaken output (or
    # the output repeated an input, which is a mistake by itself).
    state = MqAdversaryState()
    for entry in report.log:
        if entry[0] == "input":
            mq_adversary_step(state, ("need_input",))
        elif entry[0] == "query":
            mq_adversary_step(state, ("query", entry[1], entry[2]))
        elif entry[0] == "generated":
            mq_adversary_step(state, ("generated", entry[1]))
    z = report.mistake_output
    inputs = [e[1] for e in report.log if e[0] == "input"]
    assert z in inputs or \
        not state.pair.in_language(z, report.declared)


def test_mq_languages_stay_infinite_in_spirit():
    # Counts of both-placed strings grow phase over phase.
    gen = MQ_GENERATORS["scripted"](script=(), declared_bound=10 ** 9)
    report = run_mq_game(gen, max_phases=12)
    assert report.verdict == "inconclusive"
    state = MqAdversaryState()
    both_counts = []
    for entry in report.log:
        if entry[0] == "input":
            mq_adversary_step(state, ("need_input",))
            both_counts.append(state.pair.side_counts()[BOTH])
        elif entry[0] == "generated":
            mq_adversary_step(state, ("generated", entry[1]))
    assert both_counts == sorted(both_counts)
    assert both_counts[-1] == 12


def test_exhaustive_lb_finds_clause2_violation():
    tails = build_collection("tails")
    gen = build_generator("exhaustive-critical", tails)
    report = run_exhaustive_lb(tails, gen, max_phases=4, horizon=500)
    assert report.verdict == "violation"
    assert len(report.trace) == 4
    phases = [p for p, _, _ in report.trace]
    assert phases == [0, 1, 2, 3]
    t_stars = [ts for _, ts, _ in report.trace]
    assert t_stars == sorted(t_stars)
    claim = report.claim
    uncovered = claim.target - (claim.support | intset.finite(
        set(claim.inputs) | set(claim.outputs_before)))
    assert not uncovered.is_empty()
    assert intset.classify(claim.support - claim.target).finite


def test_exhaustive_lb_inconclusive_on_full_line_snapshots():
    tails = build_collection("tails")

    class AlwaysUniverse(build_generator("km-snapshot",
                                         tails).__class__):
        def snapshot(self, inputs, t):
            from genlimit.generators import Enumerator
            return Enumerator(intset.universe())

    gen = AlwaysUniverse(tails, None)
    report = run_exhaustive_lb(tails, gen, max_phases=2, horizon=40)
    assert report.verdict == "inconclusive"


def test_breadth_next_examples():
    assert breadth_next(-3) == 3
    assert breadth_next(2) == -3
    assert breadth_next(0) == -1


def test_breadth_lb_finds_inequality():
    cof = build_collection("cofinite1")
    gen = build_generator("km-snapshot", cof)
    report = run_breadth_lb(cof, gen, max_phases=3, horizon=200)
    assert report.verdict == "violation"
    assert report.claim.support != report.claim.target
    assert report.claim.support == intset.cofinite({0})
    # Every enumerated input sits inside the committed target.
    assert all(x in report.claim.target for x in report.claim.inputs)


def test_negation_witness_examples():
    tails = build_collection("tails")
    k = find_negation_witness(tails, intset.universe(), {0, 3})
    assert tails.language(k).body == intset.tail(0)
    cof = build_collection("cofinite1")
    assert find_negation_witness(cof, intset.universe(), {0, 3}) is None
    eo = build_collection("evenodd")
    assert find_negation_witness(eo, eo.language(3).body, set()) is None


def test_existence_violation_runs():
    cof = build_collection("cofinite1")
    report = run_existence_violation(cof, intset.universe())
    assert report.verdict == "condition-satisfied"
    tails = build_collection("tails")
    report = run_existence_violation(tails, intset.universe(), stages=5)
    assert report.verdict == "witnesses-at-every-stage"
    assert len(report.stages) == 5
    assert len(set(report.enumerated)) == len(report.enumerated)
