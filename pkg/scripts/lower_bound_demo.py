#!/usr/bin/env python3
"""Run every adversary construction and print the confirmed outcomes.

Usage: python3 scripts/lower_bound_demo.py [--horizon N]
"""

import argparse

from genlimit import intset
from genlimit.adversaries import (run_breadth_lb, run_exhaustive_lb,
                                  run_existence_violation, run_mq_game)
from genlimit.collection import build_collection
from genlimit.generators import MQ_GENERATORS, build_generator
from genlimit.harness import verify_violation


def mq_games() -> None:
    print("== membership-query game ==")
    for name, cls in MQ_GENERATORS.items():
        generator = cls()
        report = run_mq_game(generator,
                             max_phases=generator.declared_bound + 2)
        print(f"  {name}: declared bound {report.declared_bound}, "
              f"mistake at phase {report.mistake_phase} "
              f"(output {report.mistake_output}, committed side "
              f"{report.declared}) -> {verify_violation(report)}")


def exhaustive_lb(horizon: int) -> None:
    print("== phased adversary vs exhaustive generation (nested tails) ==")
    tails = build_collection("tails")
    report = run_exhaustive_lb(
        tails, build_generator("exhaustive-critical", tails),
        horizon=horizon)
    verdict = verify_violation(
        report.claim,
        lambda: build_generator("exhaustive-critical",
                                build_collection("tails")))
    claim = report.claim
    print(f"  phases {report.trace}, {report.rounds} rounds")
    print(f"  snapshot {intset.format_set(claim.support)} misses part of "
          f"{intset.format_set(claim.target)} at round {claim.round} "
          f"-> {verdict}")


def breadth_lb(horizon: int) -> None:
    print("== omission adversary vs unpatched snapshots (cofinite1) ==")
    cofinite1 = build_collection("cofinite1")
    report = run_breadth_lb(
        cofinite1, build_generator("km-snapshot", cofinite1),
        horizon=horizon)
    verdict = verify_violation(
        report.claim,
        lambda: build_generator("km-snapshot",
                                build_collection("cofinite1")))
    claim = report.claim
    print(f"  phases {report.trace}")
    print(f"  snapshot {intset.format_set(claim.support)} != committed "
          f"target {intset.format_set(claim.target)} at round "
          f"{claim.round} -> {verdict}")


def existence_stages() -> None:
    print("== staged negation witnesses for the tell-tale condition ==")
    for name in ("cofinite1", "tails"):
        collection = build_collection(name)
        report = run_existence_violation(collection, intset.universe(),
                                         stages=5)
        print(f"  {name}/Z: {report.verdict}")
        for stage, index, emitted in report.stages:
            body = collection.language(index).body
            print(f"    stage {stage}: language {index} = "
                  f"{intset.format_set(body)}, emitted {list(emitted)}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--horizon", type=int, default=500)
    args = parser.parse_args()
    mq_games()
    exhaustive_lb(args.horizon)
    breadth_lb(min(args.horizon, 200))
    existence_stages()


if __name__ == "__main__":
    main()
