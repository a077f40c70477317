#!/usr/bin/env python3
"""Compare both solvers on the measured seven-stage vision pipeline.

Solves the bundled vision instance with the joint memory/time objective and
with the end-time comparator, then runs a seeded Monte-Carlo pass over the
folded-normal link delays and prints everything as one JSON document.

Example:
  python scripts/realworld_compare.py --trials 50 --seed 42
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from allocflow import fixtures
from allocflow.baseline import baseline_overall, solve_baseline
from allocflow.model import instance_from_dict
from allocflow.optimizer import solve_branch_bound
from allocflow.simulate import monte_carlo_compare


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=50)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--resolve-per-trial", action="store_true")
    parser.add_argument("--out", help="write JSON here instead of stdout")
    args = parser.parse_args(argv)

    inst = instance_from_dict(fixtures.vision_pipeline())
    ours = solve_branch_bound(inst)
    base = solve_baseline(inst)
    stats = monte_carlo_compare(
        inst,
        trials=args.trials,
        seed=args.seed,
        resolve_per_trial=args.resolve_per_trial,
        threads=args.threads,
    )

    payload = {
        "ours": {
            "placement": ours.placement,
            "memory_bytes": ours.cost.memory_bytes,
            "time_seconds": ours.cost.time_seconds,
            "distance": ours.cost.distance,
        },
        "baseline": {
            "placement": base.placement,
            "end_seconds": base.cost.time_seconds,
            "overall_with_return_seconds": baseline_overall(inst, base.placement),
        },
        "monte_carlo": stats.to_dict(),
    }
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
