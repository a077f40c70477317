"""Command line front end.

Subcommands: validate, flows, time, memory, solve, pareto, simulate, bench,
examples.  Structured output is JSON with sorted keys, or CSV where a table
is more natural; repeated runs with the same inputs and seed are
byte-identical.

Exit codes: 0 success, 1 invalid or infeasible input, 2 usage error,
3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional, Sequence

from .baseline import baseline_overall, solve_baseline
from .lattice import all_flows, build_semilattice, connected_components, count_flows
from .memory import location_memory, robot_memory, step_partition
from .model import (
    CapExceededError,
    CommUnreachableError,
    InfeasibleError,
    ProblemFormatError,
    ProblemInstance,
    parse_problem,
    validate,
)
from .optimizer import Objective, evaluate, scatter, solve_branch_bound, solve_bruteforce
from .simulate import GenParams, monte_carlo_compare, scaling_benchmark
from .timing import flow_time, overall_time
from . import fixtures

OBJECTIVE_NAMES = {
    "distance": "min_distance",
    "time-max": "min_time_max",
    "time-total": "min_time_total",
    "memory": "min_memory",
}

AGGREGATE_NAMES = {"max": "max_flow", "total": "total_flows", "mean": "mean_flows"}


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj, out: Optional[str]) -> None:
    _emit(json.dumps(obj, indent=2, sort_keys=True) + "\n", out)


def _load(path: str) -> ProblemInstance:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ProblemFormatError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_problem(text)


def _load_placement(instance: ProblemInstance, path: Optional[str]) -> Dict[str, str]:
    """Placement mapping from a JSON file; everything on the edge if omitted."""
    if path is None:
        edge = instance.edge_node_id()
        return {aid: edge for aid in instance.algorithms}
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ProblemFormatError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"{path}: syntax error at line {exc.lineno} column {exc.colno}")
    if not isinstance(raw, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in raw.items()
    ):
        raise ProblemFormatError(f"{path}: placement must map algorithm ids to node ids")
    return raw


def _check_valid(instance: ProblemInstance) -> None:
    report = validate(instance)
    if not report.ok:
        raise ProblemFormatError("; ".join(report.lines()))


def _objective(args) -> Objective:
    return Objective(
        kind=OBJECTIVE_NAMES[args.objective],
        memory_weight=args.wm,
        time_weight=args.wt,
    )


def cmd_validate(args) -> int:
    try:
        instance = _load(args.file)
    except ProblemFormatError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 1
    report = validate(instance)
    if report.ok:
        _emit("ok\n", args.out)
        return 0
    _emit("".join(f"{line}\n" for line in report.lines()), args.out)
    return 1


def cmd_flows(args) -> int:
    instance = _load(args.file)
    _check_valid(instance)
    if args.count_only:
        total = sum(
            count_flows(build_semilattice(c)) for c in connected_components(instance.graph)
        )
        _emit(f"{total}\n", args.out)
        return 0
    flows = all_flows(instance.graph)
    _emit("".join(",".join(flow) + "\n" for flow in flows), args.out)
    return 0


def cmd_time(args) -> int:
    instance = _load(args.file)
    _check_valid(instance)
    placement = _load_placement(instance, args.placement)
    evaluate(instance, placement)  # placement feasibility check
    aggregate = AGGREGATE_NAMES[args.aggregate] if args.aggregate else instance.options.time_aggregate
    timings = [
        flow_time(instance, flow, placement) for flow in all_flows(instance.graph)
    ]
    lines = ["flow,request_s,exec_s,inter_s,return_s,total_s"]
    for t in timings:
        lines.append(
            ";".join(t.flow)
            + f",{t.segment_sum('request-hop')!r},{t.segment_sum('exec')!r}"
            + f",{t.segment_sum('inter-hop')!r},{t.segment_sum('return-hop')!r},{t.total!r}"
        )
    lines.append(f"# aggregate={aggregate} overall_seconds={overall_time(timings, aggregate)!r}")
    _emit("".join(f"{line}\n" for line in lines), args.out)
    return 0


def cmd_memory(args) -> int:
    instance = _load(args.file)
    _check_valid(instance)
    placement = _load_placement(instance, args.placement)
    evaluate(instance, placement)
    mode = "peak" if args.peak else "sum"
    partition = step_partition(instance.graph, all_flows(instance.graph))
    lines = ["location,bytes"]
    for nid in sorted(instance.nodes):
        lines.append(f"{nid},{location_memory(instance, placement, nid, partition, mode)!r}")
    lines.append(f"robot,{robot_memory(instance, placement, partition, mode)!r}")
    _emit("".join(f"{line}\n" for line in lines), args.out)
    return 0


def cmd_solve(args) -> int:
    instance = _load(args.file)
    _check_valid(instance)
    if args.method == "baseline":
        result = solve_baseline(instance, oracle=args.oracle)
    elif args.oracle:
        result = solve_bruteforce(instance, _objective(args))
    else:
        result = solve_branch_bound(instance, _objective(args))
    payload = {
        "method": args.method,
        "objective": "end_time" if args.method == "baseline" else OBJECTIVE_NAMES[args.objective],
        "placement": result.placement,
        "memory_bytes": result.cost.memory_bytes,
        "time_seconds": result.cost.time_seconds,
        "distance": result.cost.distance,
        "explored_nodes": result.explored_nodes,
        "per_flow": [{"flow": list(t.flow), "seconds": t.total} for t in result.per_flow],
    }
    if args.method == "baseline":
        payload["overall_with_return_seconds"] = baseline_overall(instance, result.placement)
    _emit_json(payload, args.out)
    return 0


def cmd_pareto(args) -> int:
    instance = _load(args.file)
    _check_valid(instance)
    points = scatter(instance, _objective(args), max_points=args.max_points)
    lines = ["placement_lex_index,memory_mb,time_s,distance,on_front"]
    for p in points:
        mb = p.cost.memory_bytes / (1024 * 1024)
        lines.append(
            f"{p.index},{mb!r},{p.cost.time_seconds!r},{p.cost.distance!r},{int(p.on_front)}"
        )
    _emit("".join(f"{line}\n" for line in lines), args.out)
    return 0


def cmd_simulate(args) -> int:
    instance = _load(args.file)
    _check_valid(instance)
    stats = monte_carlo_compare(
        instance,
        trials=args.trials,
        seed=args.seed,
        resolve_per_trial=args.resolve_per_trial,
        threads=args.threads,
    )
    _emit_json(stats.to_dict(), args.out)
    return 0


def cmd_bench(args) -> int:
    params = GenParams(fog_nodes=args.fog, cloud_nodes=args.cloud)
    result = scaling_benchmark(args.sizes, reps=args.reps, seed=args.seed, params=params)
    lines = ["n,mean_seconds"]
    lines += [f"{n},{s!r}" for n, s in result.points]
    if result.slope is not None:
        lines.append(
            f"# slope={result.slope!r} intercept={result.intercept!r} r2={result.r_squared!r}"
        )
    _emit("".join(f"{line}\n" for line in lines), args.out)
    return 0


def cmd_examples(args) -> int:
    paths = fixtures.write_examples(args.directory)
    _emit("".join(f"{p}\n" for p in paths), args.out)
    return 0


def _size_list(raw: str) -> List[int]:
    try:
        sizes = [int(tok) for tok in raw.split(",") if tok]
    except ValueError:
        raise argparse.ArgumentTypeError(f"sizes must be comma-separated integers, got {raw!r}")
    if not sizes or any(n < 1 for n in sizes):
        raise argparse.ArgumentTypeError("sizes must be positive integers")
    return sizes


def _positive(raw: str) -> int:
    value = int(raw)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _positive_float(raw: str) -> float:
    value = float(raw)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized subcommands")
    common.add_argument("--threads", type=_positive, default=1,
                        help="worker threads for randomized subcommands")

    parser = argparse.ArgumentParser(
        prog="allocflow",
        description="Allocate interdependent algorithms across edge, fog, and cloud nodes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str, needs_file: bool = True):
        p = sub.add_parser(name, help=help_text, parents=[common])
        if needs_file:
            p.add_argument("file", help="problem instance (JSON)")
        p.set_defaults(func=func)
        return p

    def add_objective(p):
        p.add_argument("--objective", choices=sorted(OBJECTIVE_NAMES), default="distance")
        p.add_argument("--wm", type=_positive_float, help="memory weight (default: instance)")
        p.add_argument("--wt", type=_positive_float, help="time weight (default: instance)")

    add("validate", cmd_validate, "check an instance and report violations")

    p = add("flows", cmd_flows, "execution flows, one per line")
    p.add_argument("--count-only", action="store_true", help="print the flow count only")

    p = add("time", cmd_time, "per-flow timing breakdown of a placement")
    p.add_argument("--placement", metavar="FILE",
                   help="JSON mapping of algorithm to node (default: all on the edge)")
    p.add_argument("--aggregate", choices=sorted(AGGREGATE_NAMES),
                   help="flow aggregation (default: instance option)")

    p = add("memory", cmd_memory, "per-location and robot memory of a placement")
    p.add_argument("--placement", metavar="FILE",
                   help="JSON mapping of algorithm to node (default: all on the edge)")
    p.add_argument("--peak", action="store_true",
                   help="peak concurrent footprint over steps instead of the resident sum")

    p = add("solve", cmd_solve, "find the optimal placement")
    add_objective(p)
    p.add_argument("--method", choices=("bnb", "baseline"), default="bnb",
                   help="bnb: joint memory-time search; baseline: end-time comparator")
    p.add_argument("--oracle", action="store_true", help="exhaustive search instead of pruning")

    p = add("pareto", cmd_pareto, "CSV of every placement's cost with a non-dominated flag")
    add_objective(p)
    p.add_argument("--max-points", type=_positive, default=10**6,
                   help="stratified subsample cap on the enumeration")

    p = add("simulate", cmd_simulate, "Monte-Carlo comparison under sampled link delays")
    p.add_argument("--trials", type=_positive, default=50)
    p.add_argument("--resolve-per-trial", action="store_true",
                   help="re-run both solvers inside every trial")

    p = add("bench", cmd_bench, "solver scaling on random instances", needs_file=False)
    p.add_argument("--sizes", type=_size_list, default=[4, 6, 8, 10])
    p.add_argument("--reps", type=_positive, default=3)
    p.add_argument("--fog", type=_positive, default=1, help="fog nodes per instance")
    p.add_argument("--cloud", type=_positive, default=1, help="cloud nodes per instance")

    p = add("examples", cmd_examples, "write the bundled instances", needs_file=False)
    p.add_argument("directory", nargs="?", default="fixtures", help="target directory")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ProblemFormatError, InfeasibleError, CommUnreachableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
