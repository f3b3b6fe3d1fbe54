"""Command-line entry point.

Subcommands: `run` and `run-feedback` drive a single transcript; `check`
replays a run through one of the definition checkers; `adversary` runs a
constructive lower-bound demonstration; `dimension` searches for a
dimension witness.  Options can also come from a JSON config file via
`--config`; explicit flags override it.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import dimensions, intset
from .adversaries import (ADVERSARY_NAMES, run_breadth_lb,
                          run_exhaustive_lb, run_existence_violation,
                          run_mq_game)
from .collection import COLLECTION_NAMES, build_collection
from .dimensions import GameBudget
from .generators import GENERATOR_NAMES, MQ_GENERATORS, build_generator
from .harness import (RunConfig, check_breadth, check_exhaustive,
                      check_nonuniform, render_report,
                      run_feedback_transcript, run_transcript,
                      verify_mq_report, verify_violation)
from .intset import format_set


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _json_line(record: dict) -> str:
    return json.dumps(record, separators=(", ", ": ")) + "\n"


def _load_config(args, keys):
    values = {}
    if getattr(args, "config", None):
        with open(args.config) as handle:
            values.update(json.load(handle))
    for key in keys:
        flag = getattr(args, key.replace("-", "_"), None)
        if flag is not None:
            values[key] = flag
    return values


def _run_config(args, mode: str) -> RunConfig:
    values = _load_config(args, ["collection", "target", "generator",
                                 "schedule", "seed", "horizon", "script"])
    params = values.get("generator_params", {})
    return RunConfig(
        collection=values["collection"],
        target_index=int(values["target"]),
        generator=values["generator"],
        mode=values.get("mode", mode),
        schedule=values.get("schedule", "canonical"),
        seed=int(values.get("seed", 0)),
        script=tuple(values.get("script", ())),
        horizon=int(values.get("horizon", 50)),
        generator_params=tuple(sorted(
            (k, tuple(v) if isinstance(v, list) else v)
            for k, v in params.items())))


def cmd_run(args) -> int:
    cfg = _run_config(args, args.mode)
    _emit(render_report(run_transcript(cfg)), args.out)
    return 0


def cmd_run_feedback(args) -> int:
    cfg = _run_config(args, "feedback")
    _emit(render_report(run_feedback_transcript(cfg)), args.out)
    return 0


def cmd_check(args) -> int:
    if args.kind == "nonuniform":
        if getattr(args, "generator", None) is None:
            args.generator = "greedy"
        schedules = [("canonical", "canonical", 0, ())]
        schedules += [(f"perm-{s}", "permuted", s, ())
                      for s in range(args.permutations)]
        report = check_nonuniform(args.collection, args.generator,
                                  args.target, schedules,
                                  args.horizon or 50)
        record = {"check": "nonuniform", "verdict": report.verdict,
                  "bound": report.detail["bound"],
                  "violations": report.violations}
    else:
        if getattr(args, "generator", None) is None:
            args.generator = "exhaustive-critical" \
                if args.kind == "exhaustive" else "km-snapshot"
        cfg = _run_config(args, "exhaustive")
        result = run_transcript(cfg)
        checker = check_exhaustive if args.kind == "exhaustive" \
            else check_breadth
        report = checker(result)
        record = {"check": args.kind, "verdict": report.verdict,
                  "t_star": report.t_star,
                  "failures": report.violations[:20]}
    _emit(_json_line(record), args.out)
    return 0 if record["verdict"] in ("ok", "stable") else 1


def cmd_adversary(args) -> int:
    name = args.kind
    if name == "mq":
        generator = MQ_GENERATORS[args.mq_generator]()
        report = run_mq_game(generator,
                             generator.declared_bound + args.extra_phases)
        record = {"adversary": "mq", "generator": generator.name,
                  "verdict": report.verdict,
                  "mistake_phase": report.mistake_phase,
                  "mistake_output": report.mistake_output,
                  "verified": verify_mq_report(report)}
    elif name in ("exhaustive-lb", "breadth-lb"):
        collection = build_collection(args.collection)
        factory = lambda: build_generator(args.generator, collection)
        runner = run_exhaustive_lb if name == "exhaustive-lb" \
            else run_breadth_lb
        report = runner(collection, factory(), max_phases=args.phases,
                        horizon=args.horizon)
        record = {"adversary": name, "verdict": report.verdict,
                  "trace": report.trace, "rounds": report.rounds}
        if report.claim is not None:
            record["witness_round"] = report.claim.round
            record["witness_support"] = format_set(report.claim.support)
            record["verified"] = verify_violation(report.claim, factory)
    else:
        collection = build_collection(args.collection)
        target = collection.language(args.target).body
        report = run_existence_violation(collection, target,
                                         stages=args.stages)
        record = {"adversary": "existence-violation",
                  "verdict": report.verdict,
                  "stages": report.stages}
    _emit(_json_line(record), args.out)
    return 0


def cmd_dimension(args) -> int:
    collection = build_collection(args.collection)
    if args.kind == "nonuniform":
        value = dimensions.nonuniform_complexity(collection, args.d)
        record = {"dimension": "nonuniform", "index": args.d,
                  "value": value}
    else:
        budget = GameBudget(max_rounds=args.rounds, window=args.window)
        if args.kind == "closure":
            witness = dimensions.closure_witness(collection, args.d,
                                                 args.window)
        elif args.kind == "gnf":
            witness = dimensions.gnf_witness(collection, args.d, budget)
        else:
            witness = dimensions.gf_witness(collection, args.d, budget)
        record = {"dimension": args.kind, "d": args.d,
                  "found": witness is not None}
        if witness is not None:
            record["certificate"] = format_set(witness.certificate)
            if witness.witness_set is not None:
                record["witness_set"] = sorted(witness.witness_set)
            if witness.witness_play is not None:
                record["witness_play"] = [list(r) for r
                                          in witness.witness_play.rounds]
    _emit(_json_line(record), args.out)
    return 0


def _add_run_flags(p, with_generator=True):
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--collection", choices=COLLECTION_NAMES)
    p.add_argument("--target", type=int, help="1-based target index")
    if with_generator:
        p.add_argument("--generator", choices=GENERATOR_NAMES)
    p.add_argument("--schedule",
                   choices=("canonical", "permuted", "scripted"))
    p.add_argument("--seed", type=int)
    p.add_argument("--horizon", type=int)
    p.add_argument("--out", help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="genlimit",
        description="language generation in the limit, executably")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="plain or exhaustive transcript")
    _add_run_flags(p)
    p.add_argument("--mode", default="plain",
                   choices=("plain", "exhaustive"))
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("run-feedback", help="transcript with queries")
    _add_run_flags(p)
    p.set_defaults(func=cmd_run_feedback)

    p = sub.add_parser("check", help="definition checkers")
    p.add_argument("kind", choices=("nonuniform", "exhaustive", "breadth"))
    _add_run_flags(p)
    p.add_argument("--permutations", type=int, default=20)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("adversary", help="lower-bound demonstrations")
    p.add_argument("kind", choices=("mq", "exhaustive-lb", "breadth-lb",
                                    "existence-violation"))
    p.add_argument("--collection", choices=COLLECTION_NAMES,
                   default="tails")
    p.add_argument("--generator", choices=GENERATOR_NAMES,
                   default="exhaustive-critical")
    p.add_argument("--target", type=int, default=1)
    p.add_argument("--mq-generator", choices=sorted(MQ_GENERATORS),
                   default="first-yes")
    p.add_argument("--phases", type=int, default=4)
    p.add_argument("--extra-phases", type=int, default=2)
    p.add_argument("--stages", type=int, default=5)
    p.add_argument("--horizon", type=int, default=500)
    p.add_argument("--out")
    p.set_defaults(func=cmd_adversary)

    p = sub.add_parser("dimension", help="dimension witness search")
    p.add_argument("kind", choices=("closure", "nonuniform", "gnf", "gf"))
    p.add_argument("--collection", choices=COLLECTION_NAMES,
                   required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--window", type=int, default=8)
    p.add_argument("--rounds", type=int, default=8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_dimension)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
