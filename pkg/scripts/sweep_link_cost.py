#!/usr/bin/env python3
"""Sweep the tier-to-tier link cost of the dataset pipeline.

Shows how the optimal allocation of the 500 MB dataset pipeline migrates from
cloud to fog to the robot as links slow down, and how large a return-hop
surplus the end-time comparator silently accrues at each point.

Example:
  python scripts/sweep_link_cost.py --values 1,2,4,6
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Sequence

from allocflow import fixtures
from allocflow.baseline import baseline_overall, solve_baseline
from allocflow.model import instance_from_dict
from allocflow.optimizer import Objective, solve_branch_bound

MB = 1024 * 1024


def float_list(raw: str) -> List[float]:
    try:
        return [float(tok) for tok in raw.split(",") if tok]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {raw!r}")


def joined(placement) -> str:
    return ";".join(f"{aid}={nid}" for aid, nid in sorted(placement.items()))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--values", type=float_list, default=[1.0, 2.0, 4.0, 6.0],
                        help="link seconds to sweep (default: 1,2,4,6)")
    parser.add_argument("--objective", choices=("time-max", "distance"), default="time-max",
                        help="what the joint solver minimizes")
    parser.add_argument("--out", help="write CSV here instead of stdout")
    args = parser.parse_args(argv)

    kind = "min_time_max" if args.objective == "time-max" else "min_distance"
    lines = [
        "d,ours_placement,ours_seconds,ours_memory_mb,explored"
        ",baseline_placement,baseline_end_s,baseline_overall_s,surplus_s"
    ]
    for d in args.values:
        inst = instance_from_dict(fixtures.dataset_pipeline(d))
        ours = solve_branch_bound(inst, Objective(kind))
        base = solve_baseline(inst)
        overall = baseline_overall(inst, base.placement)
        lines.append(
            f"{d!r},{joined(ours.placement)},{ours.cost.time_seconds!r}"
            f",{ours.cost.memory_bytes / MB!r},{ours.explored_nodes}"
            f",{joined(base.placement)},{base.cost.time_seconds!r}"
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
