"""Placement search: exact brute force and an equivalent branch-and-bound.

A placement's cost is the pair (robot memory, overall time) collapsed to a
weighted Euclidean distance from the origin (memory in MB, time in seconds).
Optima are exact; ties break first toward minimum robot memory, then toward
the lexicographically smallest placement under the node order cloud nodes by
id, fog nodes by id, edge node last (deepest offload wins a dead heat).
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .lattice import all_flows, layer_index
from .memory import robot_memory_bits, step_partition
from .model import (
    CapExceededError,
    InfeasibleError,
    ProblemInstance,
    effective_allowed,
    node_order,
)
from .timing import FlowTiming, Placement, flow_time, overall_time

MB_BITS = 8 * 1024 * 1024  # distance works in 2**20-byte megabytes

OBJECTIVES = ("min_distance", "min_time_max", "min_time_total", "min_memory")

DEFAULT_ENUMERATION_CAP = 10**7


@dataclass(frozen=True)
class CostPoint:
    memory_bytes: float
    time_seconds: float
    distance: float


@dataclass(frozen=True)
class Objective:
    kind: str = "min_distance"
    memory_weight: Optional[float] = None  # None -> instance option
    time_weight: Optional[float] = None

    def __post_init__(self):
        if self.kind not in OBJECTIVES:
            raise ValueError(f"unknown objective {self.kind!r}")


@dataclass
class AllocationResult:
    placement: Placement
    cost: CostPoint
    per_flow: List[FlowTiming]
    explored_nodes: int
    optimal: bool = True


def _weights(instance: ProblemInstance, objective: Objective) -> Tuple[float, float]:
    w_m = objective.memory_weight if objective.memory_weight is not None else instance.options.memory_weight
    w_t = objective.time_weight if objective.time_weight is not None else instance.options.time_weight
    return w_m, w_t


def _aggregate_for(instance: ProblemInstance, objective: Objective) -> str:
    if objective.kind == "min_time_max":
        return "max_flow"
    if objective.kind == "min_time_total":
        return "total_flows"
    return instance.options.time_aggregate


def make_cost(instance: ProblemInstance, objective: Objective, memory_bits: int, time_seconds: float) -> CostPoint:
    w_m, w_t = _weights(instance, objective)
    distance = math.hypot(w_m * (memory_bits / MB_BITS), w_t * time_seconds)
    return CostPoint(memory_bytes=memory_bits / 8.0, time_seconds=time_seconds, distance=distance)


def primary_value(objective: Objective, cost: CostPoint):
    if objective.kind == "min_memory":
        return cost.memory_bytes
    if objective.kind in ("min_time_max", "min_time_total"):
        return cost.time_seconds
    return cost.distance


# ---------------------------------------------------------------------------
# Shared solve context


@dataclass
class SolveContext:
    """Everything a search needs, computed once per instance."""

    instance: ProblemInstance
    objective: Objective
    include_return_hop: bool
    edge_id: str
    order: List[str]  # branching order: (layer, id)
    sorted_ids: List[str]  # tie-break order for LEX tuples
    allowed: Dict[str, Tuple[str, ...]]  # in node tie-break order
    node_rank: Dict[str, int]
    flows: List[Tuple[str, ...]]
    partition: List[Tuple[str, ...]]
    aggregate: str
    exec_s: Dict[Tuple[str, str], float]  # (alg, node) -> seconds
    input_bits: Dict[str, int]
    output_bits: Dict[str, int]
    membership: Dict[str, List[Tuple[int, int]]]  # alg -> [(flow index, position)]
    preds: Dict[str, Tuple[str, ...]]  # direct dependency-graph predecessors
    # best_suffix[fi][pos][node] = cheapest way to finish flow fi (inbound hop,
    # execs, inter-hops, return hop) given position pos-1 sits on node.  Exact
    # per flow in isolation, hence an admissible joint bound.
    best_suffix: List[List[Dict[str, float]]]
    all_output_regions: frozenset
    delays: Optional[Dict[Tuple[str, str], float]]
    _hops: Dict[Tuple[str, str, int], float] = field(default_factory=dict)

    def hop(self, src: str, dst: str, payload_bits: int) -> float:
        key = (src, dst, payload_bits)
        cached = self._hops.get(key)
        if cached is None:
            cached = self.instance.comm.resolve(src, dst, payload_bits, delays=self.delays)
            self._hops[key] = cached
        return cached

    def lex_tuple(self, placement: Placement) -> Tuple[int, ...]:
        return tuple(self.node_rank[placement[aid]] for aid in self.sorted_ids)


def build_context(
    instance: ProblemInstance,
    objective: Optional[Objective] = None,
    include_return_hop: bool = True,
    delays: Optional[Dict[Tuple[str, str], float]] = None,
    flow_cap: Optional[int] = None,
) -> SolveContext:
    objective = objective or Objective()
    levels = layer_index(instance.graph)
    order = sorted(instance.algorithms, key=lambda aid: (levels[aid], aid))
    allowed = effective_allowed(instance)
    for aid, nodes in allowed.items():
        if not nodes:
            raise InfeasibleError(f"algorithm {aid} has no feasible location")
    rank = {nid: i for i, nid in enumerate(node_order(instance))}
    flows = all_flows(instance.graph, cap=flow_cap)
    partition = step_partition(instance.graph, flows) if instance.algorithms else []

    exec_s: Dict[Tuple[str, str], float] = {}
    input_bits: Dict[str, int] = {}
    output_bits: Dict[str, int] = {}
    for aid, spec in instance.algorithms.items():
        for nid in allowed[aid]:
            exec_s[(aid, nid)] = spec.exec_time_at(instance.nodes[nid])
        input_bits[aid] = sum(instance.region_bits(r) for r in sorted(spec.memory.inputs))
        output_bits[aid] = sum(instance.region_bits(r) for r in sorted(spec.memory.outputs))

    edge_id = instance.edge_node_id() if instance.algorithms else ""
    hop_memo: Dict[Tuple[str, str, int], float] = {}

    def hop(src: str, dst: str, payload_bits: int) -> float:
        key = (src, dst, payload_bits)
        cached = hop_memo.get(key)
        if cached is None:
            cached = instance.comm.resolve(src, dst, payload_bits, delays=delays)
            hop_memo[key] = cached
        return cached

    membership: Dict[str, List[Tuple[int, int]]] = {aid: [] for aid in instance.algorithms}
    best_suffix: List[List[Dict[str, float]]] = []
    for fi, flow in enumerate(flows):
        for pos, aid in enumerate(flow):
            membership[aid].append((fi, pos))
        suffix: List[Dict[str, float]] = [{} for _ in range(len(flow) + 1)]
        if include_return_hop:
            suffix[len(flow)] = {
                nid: hop(nid, edge_id, output_bits[flow[-1]]) for nid in allowed[flow[-1]]
            }
        else:
            suffix[len(flow)] = {nid: 0.0 for nid in allowed[flow[-1]]}
        for pos in range(len(flow) - 1, -1, -1):
            aid = flow[pos]
            payload = input_bits[aid] if pos == 0 else output_bits[flow[pos - 1]]
            sources = (edge_id,) if pos == 0 else allowed[flow[pos - 1]]
            nxt = suffix[pos + 1]
            suffix[pos] = {
                src: min(
                    hop(src, nid, payload) + exec_s[(aid, nid)] + nxt[nid]
                    for nid in allowed[aid]
                )
                for src in sources
            }
        best_suffix.append(suffix)

    all_outputs = frozenset().union(
        frozenset(), *(spec.memory.outputs for spec in instance.algorithms.values())
    )

    pred_lists: Dict[str, List[str]] = {aid: [] for aid in instance.algorithms}
    for u, v in instance.graph.edges:
        pred_lists[v].append(u)
    preds = {aid: tuple(sorted(us)) for aid, us in pred_lists.items()}

    return SolveContext(
        instance=instance,
        objective=objective,
        include_return_hop=include_return_hop,
        edge_id=edge_id,
        order=order,
        sorted_ids=sorted(instance.algorithms),
        allowed=allowed,
        node_rank=rank,
        flows=flows,
        partition=partition,
        aggregate=_aggregate_for(instance, objective),
        exec_s=exec_s,
        input_bits=input_bits,
        output_bits=output_bits,
        membership=membership,
        preds=preds,
        best_suffix=best_suffix,
        all_output_regions=all_outputs,
        delays=delays,
        _hops=hop_memo,
    )


def _flow_total(ctx: SolveContext, flow: Tuple[str, ...], placement: Placement) -> float:
    """Same accumulation order as timing.flow_time, without the breakdown."""
    total = 0.0
    prev = ctx.edge_id
    for i, aid in enumerate(flow):
        node = placement[aid]
        if i == 0:
            total += ctx.hop(prev, node, ctx.input_bits[aid])
        else:
            total += ctx.hop(prev, node, ctx.output_bits[flow[i - 1]])
        total += ctx.exec_s[(aid, node)]
        prev = node
    if flow and ctx.include_return_hop:
        total += ctx.hop(prev, ctx.edge_id, ctx.output_bits[flow[-1]])
    return total


def _robot_bits(ctx: SolveContext, placement: Placement) -> int:
    regions = set(ctx.all_output_regions)
    pr = 0
    for aid in ctx.sorted_ids:
        if placement[aid] == ctx.edge_id:
            profile = ctx.instance.algorithms[aid].memory
            regions.update(profile.inputs)
            regions.update(profile.outputs)
            pr += profile.processing_bits
    return sum(ctx.instance.region_bits(r) for r in regions) + pr


def _aggregate_times(ctx: SolveContext, totals: Sequence[float]) -> float:
    if not totals:
        return 0.0
    if ctx.aggregate == "max_flow":
        return max(totals)
    if ctx.aggregate == "total_flows":
        return sum(totals)
    return sum(totals) / len(totals)


def _placement_key(ctx: SolveContext, placement: Placement) -> Tuple:
    totals = [_flow_total(ctx, flow, placement) for flow in ctx.flows]
    time_s = _aggregate_times(ctx, totals)
    mem_bits = _robot_bits(ctx, placement)
    cost = make_cost(ctx.instance, ctx.objective, mem_bits, time_s)
    return (primary_value(ctx.objective, cost), mem_bits, ctx.lex_tuple(placement)), cost


def evaluate(
    instance: ProblemInstance,
    placement: Placement,
    objective: Optional[Objective] = None,
    delays: Optional[Dict[Tuple[str, str], float]] = None,
    include_return_hop: bool = True,
    check_feasible: bool = True,
) -> CostPoint:
    """CostPoint of one placement (robot memory, overall time, distance)."""
    objective = objective or Objective()
    if not instance.algorithms:
        return CostPoint(0.0, 0.0, 0.0)
    if check_feasible:
        allowed = effective_allowed(instance)
        for aid in instance.algorithms:
            if aid not in placement:
                raise InfeasibleError(f"placement misses algorithm {aid}")
            if placement[aid] not in allowed[aid]:
                raise InfeasibleError(
                    f"algorithm {aid} may not run on {placement[aid]!r} "
                    f"(allowed: {', '.join(allowed[aid])})"
                )
    timings = [
        flow_time(instance, flow, placement, delays=delays, include_return_hop=include_return_hop)
        for flow in all_flows(instance.graph)
    ]
    time_s = overall_time(timings, _aggregate_for(instance, objective))
    mem_bits = robot_memory_bits(instance, placement)
    return make_cost(instance, objective, mem_bits, time_s)


def _empty_result() -> AllocationResult:
    return AllocationResult({}, CostPoint(0.0, 0.0, 0.0), [], 0, True)


def _finish(ctx: SolveContext, placement: Placement, explored: int) -> AllocationResult:
    timings = [
        flow_time(
            ctx.instance,
            flow,
            placement,
            delays=ctx.delays,
            include_return_hop=ctx.include_return_hop,
        )
        for flow in ctx.flows
    ]
    time_s = _aggregate_times(ctx, [t.total for t in timings])
    mem_bits = _robot_bits(ctx, placement)
    cost = make_cost(ctx.instance, ctx.objective, mem_bits, time_s)
    return AllocationResult(
        placement={aid: placement[aid] for aid in ctx.sorted_ids},
        cost=cost,
        per_flow=timings,
        explored_nodes=explored,
        optimal=True,
    )


def solve_bruteforce(
    instance: ProblemInstance,
    objective: Optional[Objective] = None,
    include_return_hop: bool = True,
    delays: Optional[Dict[Tuple[str, str], float]] = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> AllocationResult:
    """Reference oracle: enumerate every feasible placement."""
    if not instance.algorithms:
        return _empty_result()
    ctx = build_context(instance, objective, include_return_hop, delays)
    total = 1
    for aid in ctx.sorted_ids:
        total *= len(ctx.allowed[aid])
    if total > cap:
        raise CapExceededError("placement enumeration", total, cap)

    best_key = None
    best_placement = None
    explored = 0
    for combo in itertools.product(*(ctx.allowed[aid] for aid in ctx.sorted_ids)):
        placement = dict(zip(ctx.sorted_ids, combo))
        key, _ = _placement_key(ctx, placement)
        explored += 1
        if best_key is None or key < best_key:
            best_key = key
            best_placement = placement
    return _finish(ctx, best_placement, explored)


# ---------------------------------------------------------------------------
# Branch and bound


def default_guess(ctx: SolveContext) -> Placement:
    """All-edge start; algorithms barred from the edge take their first
    allowed node in tie-break order (unbounded ones thus the first cloud)."""
    guess = {}
    for aid in ctx.sorted_ids:
        nodes = ctx.allowed[aid]
        guess[aid] = ctx.edge_id if ctx.edge_id in nodes else nodes[0]
    return guess


def _greedy_flow_guess(ctx: SolveContext) -> Placement:
    """Walk each flow along its cheapest completion; first writer wins."""
    guess: Placement = {}
    for fi, flow in enumerate(ctx.flows):
        prev = ctx.edge_id
        for pos, aid in enumerate(flow):
            if aid in guess:
                prev = guess[aid]
                continue
            payload = ctx.input_bits[aid] if pos == 0 else ctx.output_bits[flow[pos - 1]]
            nxt = ctx.best_suffix[fi][pos + 1]
            best = min(
                ctx.allowed[aid],
                key=lambda nid: (
                    ctx.hop(prev, nid, payload) + ctx.exec_s[(aid, nid)] + nxt[nid],
                    ctx.node_rank[nid],
                ),
            )
            guess[aid] = best
            prev = best
    return guess


def _polish_guess(ctx: SolveContext, guess: Placement) -> Placement:
    """Deterministic single-move descent on the exact placement key.

    Each candidate move re-times only the flows containing the moved
    algorithm; memory follows via region refcounts, so a pass costs
    O(n * nodes * flows) comparisons instead of full re-evaluations.
    """
    placement = dict(guess)
    totals = [_flow_total(ctx, flow, placement) for flow in ctx.flows]
    region_count: Dict[str, int] = {}
    inou_bits = 0
    pr_bits = 0
    for region in sorted(ctx.all_output_regions):
        region_count[region] = 1
        inou_bits += ctx.instance.region_bits(region)
    for aid in ctx.sorted_ids:
        if placement[aid] == ctx.edge_id:
            profile = ctx.instance.algorithms[aid].memory
            for region in sorted(profile.inputs | profile.outputs):
                count = region_count.get(region, 0)
                if count == 0:
                    inou_bits += ctx.instance.region_bits(region)
                region_count[region] = count + 1
            pr_bits += profile.processing_bits

    def edge_delta(aid: str, arriving: bool) -> int:
        # mutates region_count; returns the inputs-union-outputs bit change
        profile = ctx.instance.algorithms[aid].memory
        step = 1 if arriving else -1
        delta = 0
        for region in sorted(profile.inputs | profile.outputs):
            count = region_count.get(region, 0)
            if (arriving and count == 0) or (not arriving and count == 1):
                delta += ctx.instance.region_bits(region)
            region_count[region] = count + step
        return delta if arriving else -delta

    mem_bits = inou_bits + pr_bits
    time_s = _aggregate_times(ctx, totals)
    cost = make_cost(ctx.instance, ctx.objective, mem_bits, time_s)
    key = (primary_value(ctx.objective, cost), mem_bits, ctx.lex_tuple(placement))

    improved = True
    while improved:
        improved = False
        for aid in ctx.order:
            kept = placement[aid]
            for nid in ctx.allowed[aid]:
                if nid == kept:
                    continue
                placement[aid] = nid
                stashed = [(fi, totals[fi]) for fi, _ in ctx.membership[aid]]
                for fi, _ in stashed:
                    totals[fi] = _flow_total(ctx, ctx.flows[fi], placement)
                new_inou = inou_bits
                new_pr = pr_bits
                if kept == ctx.edge_id:
                    new_inou += edge_delta(aid, arriving=False)
                    new_pr -= ctx.instance.algorithms[aid].memory.processing_bits
                if nid == ctx.edge_id:
                    new_inou += edge_delta(aid, arriving=True)
                    new_pr += ctx.instance.algorithms[aid].memory.processing_bits
                new_mem = new_inou + new_pr
                new_time = _aggregate_times(ctx, totals)
                new_cost = make_cost(ctx.instance, ctx.objective, new_mem, new_time)
                cand = (primary_value(ctx.objective, new_cost), new_mem, ctx.lex_tuple(placement))
                if cand < key:
                    key = cand
                    inou_bits, pr_bits = new_inou, new_pr
                    kept = nid
                    improved = True
                else:
                    # roll back the refcounts and stashed flow totals
                    if nid == ctx.edge_id:
                        edge_delta(aid, arriving=False)
                    if kept == ctx.edge_id:
                        edge_delta(aid, arriving=True)
                    placement[aid] = kept
                    for fi, t in stashed:
                        totals[fi] = t
            placement[aid] = kept
    return placement


def warm_start(ctx: SolveContext, seed: Optional[Placement] = None) -> Placement:
    """Best incumbent among the seed, uniform placements, and a greedy walk,
    then single-move polished.  Only the search effort depends on it; the
    optimum and its tie-break never do."""
    candidates = [seed if seed is not None else default_guess(ctx)]
    if seed is None:
        by_rank = sorted(ctx.node_rank, key=ctx.node_rank.__getitem__)
        for nid in by_rank:
            if all(nid in ctx.allowed[aid] for aid in ctx.sorted_ids):
                candidates.append({aid: nid for aid in ctx.sorted_ids})
        candidates.append(_greedy_flow_guess(ctx))
    best = min(candidates, key=lambda p: _placement_key(ctx, p)[0])
    return _polish_guess(ctx, best)


class _Search:
    def __init__(self, ctx: SolveContext, incumbent: Placement):
        self.ctx = ctx
        n_flows = len(ctx.flows)
        self.prefix_time = [0.0] * n_flows
        self.prefix_len = [0] * n_flows
        self.flow_bound = [ctx.best_suffix[f][0][ctx.edge_id] for f in range(n_flows)]
        # running aggregate of flow_bound, so bound() is O(1); flow bounds only
        # grow under _assign, so the max needs no rescan
        self.agg_sum = sum(self.flow_bound)
        self.agg_max = max(self.flow_bound, default=0.0)
        self.region_count: Dict[str, int] = {}
        self.inou_bits = 0
        self.pr_bits = 0
        for region in sorted(ctx.all_output_regions):
            self.region_count[region] = 1
            self.inou_bits += ctx.instance.region_bits(region)
        self.assignment: Placement = {}
        self.explored = 0
        key, _ = _placement_key(ctx, incumbent)
        self.best_key = key
        self.best_placement = dict(incumbent)

    # -- incremental state -------------------------------------------------

    def _assign(self, aid: str, node: str):
        ctx = self.ctx
        undo_flows = []
        undo_agg = (self.agg_sum, self.agg_max)
        hop = ctx.hop
        flows = ctx.flows
        suffixes = ctx.best_suffix
        output_bits = ctx.output_bits
        assignment = self.assignment
        prefix_time = self.prefix_time
        prefix_len = self.prefix_len
        flow_bound = self.flow_bound
        exec_here = ctx.exec_s[(aid, node)]
        agg_sum = self.agg_sum
        agg_max = self.agg_max
        for fi, pos in ctx.membership[aid]:
            old_bound = flow_bound[fi]
            t = prefix_time[fi]
            undo_flows.append((fi, t, old_bound))
            flow = flows[fi]
            if pos == 0:
                t += hop(ctx.edge_id, node, ctx.input_bits[aid])
            else:
                prev = assignment[flow[pos - 1]]
                t += hop(prev, node, output_bits[flow[pos - 1]])
            t += exec_here
            prefix_time[fi] = t
            prefix_len[fi] = pos + 1
            if pos + 1 == len(flow):
                if ctx.include_return_hop:
                    t += hop(node, ctx.edge_id, output_bits[aid])
            else:
                t += suffixes[fi][pos + 1][node]
            flow_bound[fi] = t
            agg_sum += t - old_bound
            if t > agg_max:
                agg_max = t
        self.agg_sum = agg_sum
        self.agg_max = agg_max

        undo_regions = []
        undo_pr = 0
        if node == ctx.edge_id:
            profile = ctx.instance.algorithms[aid].memory
            for region in sorted(profile.inputs | profile.outputs):
                count = self.region_count.get(region, 0)
                if count == 0:
                    self.inou_bits += ctx.instance.region_bits(region)
                self.region_count[region] = count + 1
                undo_regions.append(region)
            undo_pr = profile.processing_bits
            self.pr_bits += undo_pr

        self.assignment[aid] = node
        return undo_flows, undo_regions, undo_pr, undo_agg

    def _unassign(self, aid: str, undo):
        undo_flows, undo_regions, undo_pr, undo_agg = undo
        self.agg_sum, self.agg_max = undo_agg
        for fi, t, bound in undo_flows:
            self.prefix_time[fi] = t
            self.flow_bound[fi] = bound
            self.prefix_len[fi] -= 1
        for region in undo_regions:
            self.region_count[region] -= 1
            if self.region_count[region] == 0:
                self.inou_bits -= self.ctx.instance.region_bits(region)
        self.pr_bits -= undo_pr
        del self.assignment[aid]

    # -- bounding ----------------------------------------------------------

    def _primary_of(self, time_bound: float, mem_bits: int) -> float:
        ctx = self.ctx
        if ctx.objective.kind == "min_memory":
            return mem_bits / 8.0
        if ctx.objective.kind in ("min_time_max", "min_time_total"):
            return time_bound
        w_m, w_t = _weights(ctx.instance, ctx.objective)
        return math.hypot(w_m * (mem_bits / MB_BITS), w_t * time_bound)

    def probe(self, aid: str, node: str) -> Tuple[float, int]:
        """Child bound of assigning aid->node, computed without mutating.

        Flow bounds only grow under assignment, so max(agg_max, new values)
        is exactly the updated maximum.
        """
        ctx = self.ctx
        agg_sum = self.agg_sum
        agg_max = self.agg_max
        hop = ctx.hop
        flows = ctx.flows
        suffixes = ctx.best_suffix
        output_bits = ctx.output_bits
        assignment = self.assignment
        prefix_time = self.prefix_time
        flow_bound = self.flow_bound
        exec_here = ctx.exec_s[(aid, node)]
        for fi, pos in ctx.membership[aid]:
            t = prefix_time[fi]
            flow = flows[fi]
            if pos == 0:
                t += hop(ctx.edge_id, node, ctx.input_bits[aid])
            else:
                prev = assignment[flow[pos - 1]]
                t += hop(prev, node, output_bits[flow[pos - 1]])
            t += exec_here
            if pos + 1 == len(flow):
                if ctx.include_return_hop:
                    t += hop(node, ctx.edge_id, output_bits[aid])
            else:
                t += suffixes[fi][pos + 1][node]
            agg_sum += t - flow_bound[fi]
            if t > agg_max:
                agg_max = t

        mem_bits = self.inou_bits + self.pr_bits
        if node == ctx.edge_id:
            profile = ctx.instance.algorithms[aid].memory
            for region in profile.inputs | profile.outputs:
                if self.region_count.get(region, 0) == 0:
                    mem_bits += ctx.instance.region_bits(region)
            mem_bits += profile.processing_bits

        if ctx.aggregate == "max_flow":
            time_bound = agg_max
        elif ctx.aggregate == "total_flows":
            time_bound = agg_sum
        else:
            time_bound = agg_sum / len(ctx.flows) if ctx.flows else 0.0
        return self._primary_of(time_bound, mem_bits), mem_bits

    def run(self) -> Tuple[Placement, int]:
        self._descend(0)
        return self.best_placement, self.explored

    def _descend(self, depth: int):
        ctx = self.ctx
        if depth == len(ctx.order):
            mem_bits = self.inou_bits + self.pr_bits
            time_s = _aggregate_times(ctx, self.flow_bound)
            cost = make_cost(ctx.instance, ctx.objective, mem_bits, time_s)
            key = (primary_value(ctx.objective, cost), mem_bits, ctx.lex_tuple(self.assignment))
            if key < self.best_key:
                self.best_key = key
                self.best_placement = dict(self.assignment)
            return
        aid = ctx.order[depth]
        probes = sorted(
            (*self.probe(aid, node), ctx.node_rank[node], node) for node in ctx.allowed[aid]
        )
        for primary, mem_bits, _, node in probes:
            # Admissible bound: descend unless no completion can beat or tie
            # the incumbent, so tie-broken optima match brute force exactly.
            # best_key only tightens between the probe and here, so the probe
            # bounds stay valid.
            if primary < self.best_key[0] or (
                primary == self.best_key[0] and mem_bits <= self.best_key[1]
            ):
                undo = self._assign(aid, node)
                self.explored += 1
                self._descend(depth + 1)
                self._unassign(aid, undo)


def solve_branch_bound(
    instance: ProblemInstance,
    objective: Optional[Objective] = None,
    initial_guess: Optional[Placement] = None,
    include_return_hop: bool = True,
    delays: Optional[Dict[Tuple[str, str], float]] = None,
) -> AllocationResult:
    """Exact search over placements, branching in layering order.

    Returns the same optimum and the same tie-broken placement as
    solve_bruteforce, usually after exploring far fewer nodes.
    """
    if not instance.algorithms:
        return _empty_result()
    ctx = build_context(instance, objective, include_return_hop, delays)
    if initial_guess is not None:
        for aid in ctx.sorted_ids:
            if aid not in initial_guess:
                raise InfeasibleError(f"initial guess misses algorithm {aid}")
            if initial_guess[aid] not in ctx.allowed[aid]:
                raise InfeasibleError(
                    f"initial guess places {aid} on forbidden node {initial_guess[aid]!r}"
                )
        guess = warm_start(ctx, {aid: initial_guess[aid] for aid in ctx.sorted_ids})
    else:
        guess = warm_start(ctx)
    search = _Search(ctx, guess)
    placement, explored = search.run()
    return _finish(ctx, placement, explored)


# ---------------------------------------------------------------------------
# Pareto front


@dataclass(frozen=True)
class ScatterPoint:
    index: int  # position in the feasible enumeration (tie-break node order)
    placement: Tuple[str, ...]  # node per algorithm, algorithms sorted by id
    cost: CostPoint
    on_front: bool


def scatter(
    instance: ProblemInstance,
    objective: Optional[Objective] = None,
    max_points: int = 10**6,
) -> List[ScatterPoint]:
    """Cost of every feasible placement with its non-dominated flag.

    When the feasible space exceeds max_points a deterministic stratified
    subsample (evenly spaced enumeration indices) is evaluated instead.
    """
    if not instance.algorithms:
        return []
    ctx = build_context(instance, objective)
    sizes = [len(ctx.allowed[aid]) for aid in ctx.sorted_ids]
    total = 1
    for s in sizes:
        total *= s

    if total > max_points:
        warnings.warn(
            f"feasible space has {total} placements; evaluating a stratified "
            f"subsample of {max_points}",
            stacklevel=2,
        )
        indices = [i * total // max_points for i in range(max_points)]
    else:
        indices = range(total)

    points: List[Tuple[int, Tuple[str, ...], int, float]] = []
    for index in indices:
        combo: List[str] = []
        rem = index
        for aid, size in zip(reversed(ctx.sorted_ids), reversed(sizes)):
            rem, digit = divmod(rem, size)
            combo.append(ctx.allowed[aid][digit])
        combo.reverse()
        placement = dict(zip(ctx.sorted_ids, combo))
        totals = [_flow_total(ctx, flow, placement) for flow in ctx.flows]
        time_s = _aggregate_times(ctx, totals)
        mem_bits = _robot_bits(ctx, placement)
        points.append((index, tuple(combo), mem_bits, time_s))

    # Non-dominated scan over (memory, time), both minimized.
    best_with_smaller_mem = math.inf
    front_keys = set()
    by_mem: Dict[int, float] = {}
    for _, _, mem_bits, time_s in points:
        by_mem[mem_bits] = min(time_s, by_mem.get(mem_bits, math.inf))
    for mem_bits in sorted(by_mem):
        group_min = by_mem[mem_bits]
        if group_min < best_with_smaller_mem:
            front_keys.add((mem_bits, group_min))
        best_with_smaller_mem = min(best_with_smaller_mem, group_min)

    result = []
    for index, combo, mem_bits, time_s in points:
        cost = make_cost(instance, ctx.objective, mem_bits, time_s)
        result.append(
            ScatterPoint(
                index=index,
                placement=combo,
                cost=cost,
                on_front=(mem_bits, time_s) in front_keys,
            )
        )
    return result


def pareto_front(
    instance: ProblemInstance,
    objective: Optional[Objective] = None,
    max_points: int = 10**6,
) -> List[ScatterPoint]:
    """The non-dominated placements, sorted by (memory, time, placement)."""
    return sorted(
        (p for p in scatter(instance, objective, max_points) if p.on_front),
        key=lambda p: (p.cost.memory_bytes, p.cost.time_seconds, p.placement),
    )
