#!/usr/bin/env python3
"""Timing runs over generated inputs.

Scenarios: ``index`` re-recognizes awkward cyclotomics with both
methods, ``factors`` recovers factor indexes of random cyclotomic
products, ``lrs`` scans degenerate and random polynomials for
recurrence degeneracy orders.  Times are wall-clock on this machine;
compare trends between runs, not absolute numbers.

Usage: python3 scripts/bench.py [index|factors|lrs|all] [--seed N]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from cyclolrs.cli import _SCENARIOS  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("scenario", nargs="?", default="all",
                    choices=("index", "factors", "lrs", "all"))
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    names = list(_SCENARIOS) if args.scenario == "all" else [args.scenario]
    print(f"{'case':24} {'deg':>6} {'ms':>10}  summary")
    total = 0.0
    for name in names:
        for row in _SCENARIOS[name](args.seed):
            total += row["ms"]
            print(f"{row['case']:24} {row['degree']:>6} {row['ms']:>10.2f}  {row['summary']}")
    print(f"{'total':24} {'':>6} {total:>10.2f}")


if __name__ == "__main__":
    main()
