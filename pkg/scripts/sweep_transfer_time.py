#!/usr/bin/env python3
"""Sweep the per-hop transfer time of the single-sort trade-off instance.

For each x the script solves both ways — the joint memory/time search and the
end-time comparator — and reports where each one puts the algorithm, what the
robot actually waits, and the return-hop cost the comparator ignores.

Example:
  python scripts/sweep_transfer_time.py --start 0.25 --stop 3.5 --step 0.25
  python scripts/sweep_transfer_time.py --values 0.25,0.75,1.25,2.0,3.5 --out sweep.csv
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Sequence

from allocflow import fixtures
from allocflow.baseline import baseline_overall, solve_baseline
from allocflow.model import instance_from_dict
from allocflow.optimizer import solve_branch_bound


def float_list(raw: str) -> List[float]:
    try:
        return [float(tok) for tok in raw.split(",") if tok]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {raw!r}")


def sweep_values(args) -> List[float]:
    if args.values:
        return args.values
    values = []
    x = args.start
    while x <= args.stop + 1e-9:
        values.append(round(x, 9))
        x += args.step
    return values


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--start", type=float, default=0.25)
    parser.add_argument("--stop", type=float, default=3.5)
    parser.add_argument("--step", type=float, default=0.25)
    parser.add_argument("--values", type=float_list,
                        help="explicit sweep points, overrides start/stop/step")
    parser.add_argument("--out", help="write CSV here instead of stdout")
    args = parser.parse_args(argv)

    lines = ["x,ours_node,ours_seconds,baseline_node,baseline_end_s,baseline_overall_s,surplus_s"]
    for x in sweep_values(args):
        inst = instance_from_dict(fixtures.sort_tradeoff(x))
        ours = solve_branch_bound(inst)
        base = solve_baseline(inst)
        overall = baseline_overall(inst, base.placement)
        lines.append(
            f"{x!r},{ours.placement['sort']},{ours.cost.time_seconds!r}"
            f",{base.placement['sort']},{base.cost.time_seconds!r}"
            f",{overall!r},{overall - base.cost.time_seconds!r}"
        )

    text = "".join(f"{line}\n" for line in lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
