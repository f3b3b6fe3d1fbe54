#!/usr/bin/env python3
"""Tabulate non-uniform complexities and game-dimension witnesses.

Usage: python3 scripts/dimension_report.py [--max-index 8] [--max-d 3]
"""

import argparse

from genlimit import intset
from genlimit.collection import COLLECTION_NAMES, build_collection
from genlimit.dimensions import (GameBudget, closure_witness, gf_witness,
                                 gnf_witness, nonuniform_complexity)


def complexity_table(max_index: int) -> None:
    print("== non-uniform complexity m(i) ==")
    header = "collection".ljust(12) + "".join(
        f"i={i:<4}" for i in range(1, max_index + 1))
    print("  " + header)
    for name in COLLECTION_NAMES:
        collection = build_collection(name)
        top = max_index if collection.size is None \
            else min(max_index, collection.size)
        row = [str(nonuniform_complexity(collection, i)).ljust(5)
               for i in range(1, top + 1)]
        print("  " + name.ljust(12) + "".join(row))


def witness_table(max_d: int) -> None:
    print("== closure / no-feedback / with-feedback witnesses ==")
    budget = GameBudget(max_rounds=max_d + 3, window=8)
    for name in COLLECTION_NAMES:
        collection = build_collection(name)
        for d in range(1, max_d + 1):
            closure = closure_witness(collection, d, window=8)
            gnf = gnf_witness(collection, d, budget)
            # the with-feedback game search is exponential in the window
            gf = gf_witness(collection, d,
                            GameBudget(max_rounds=d + 1, window=4))
            cells = []
            for label, witness in (("closure", closure),
                                   ("no-feedback", gnf),
                                   ("feedback", gf)):
                cells.append(f"{label}={'yes' if witness else 'no'}")
            print(f"  {name:<12} d={d}  " + "  ".join(cells))
            if closure is not None:
                members = sorted(closure.witness_set)
                print(f"    closure set {members}, certificate "
                      f"{intset.format_set(closure.certificate)}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-index", type=int, default=8)
    parser.add_argument("--max-d", type=int, default=3)
    args = parser.parse_args()
    complexity_table(args.max_index)
    witness_table(args.max_d)


if __name__ == "__main__":
    main()
