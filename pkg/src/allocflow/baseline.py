"""Prior-work comparator: minimize when the last algorithm *finishes*.

The baseline runs the same exact search but stops each flow's clock at the
last algorithm's node, ignoring the hop that carries the result back to the
robot (and ignoring memory).  Its true cost to the robot is that end time
plus the forgotten return hop, which baseline_overall restores per flow.
"""

from __future__ import annotations

from typing import Dict, Optional, Tuple

from .model import ProblemInstance
from .optimizer import AllocationResult, Objective, solve_branch_bound, solve_bruteforce
from .timing import Placement, flow_time, overall_time

_END_TIME = Objective(kind="min_time_max")


def solve_baseline(
    instance: ProblemInstance,
    delays: Optional[Dict[Tuple[str, str], float]] = None,
    oracle: bool = False,
) -> AllocationResult:
    """Exact end-time optimum; result.cost.time_seconds is the end time."""
    solver = solve_bruteforce if oracle else solve_branch_bound
    return solver(instance, objective=_END_TIME, include_return_hop=False, delays=delays)


def baseline_overall(
    instance: ProblemInstance,
    placement: Placement,
    delays: Optional[Dict[Tuple[str, str], float]] = None,
) -> float:
    """What the baseline's choice actually costs the robot: per-flow end time
    plus the return hop, aggregated by max."""
    from .lattice import all_flows

    timings = [
        flow_time(instance, flow, placement, delays=delays, include_return_hop=True)
        for flow in all_flows(instance.graph)
    ]
    return overall_time(timings, "max_flow")
