"""Problem model: nodes, memory regions, algorithms, dependency graph, comm links.

An instance describes a single robot (the unique edge-tier node) that must run a
DAG of interdependent algorithms, each placeable on edge, fog, or cloud nodes.
All data sizes are bits (ints), all times are seconds (floats).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple


class Tier(str, Enum):
    EDGE = "edge"
    FOG = "fog"
    CLOUD = "cloud"


class ProblemFormatError(ValueError):
    """Raised when instance text cannot be parsed into a ProblemInstance."""


class CommUnreachableError(ValueError):
    """Raised when no declared link path connects a requested node pair."""


class InfeasibleError(ValueError):
    """Raised when a placement (or search) violates location constraints."""


class CapExceededError(RuntimeError):
    """Raised when an enumeration would exceed its configured cap."""

    def __init__(self, kind: str, count: int, cap: int):
        super().__init__(f"{kind}: {count} exceeds cap {cap}")
        self.kind = kind
        self.count = count
        self.cap = cap


@dataclass(frozen=True)
class LocationNode:
    id: str
    tier: Tier


@dataclass(frozen=True)
class MemoryRegion:
    """Named block of data; shared regions are counted once per location."""

    id: str
    size_bits: int


@dataclass(frozen=True)
class MemoryProfile:
    """Input/processing/output footprint of one algorithm.

    growth_per_step gives the per-execution-step linear growth (bits) of each
    component; any positive growth marks the algorithm as unbounded.
    """

    inputs: FrozenSet[str] = frozenset()
    outputs: FrozenSet[str] = frozenset()
    processing_bits: int = 0
    growth_per_step: Tuple[int, int, int] = (0, 0, 0)  # (inputs, processing, outputs)


@dataclass(frozen=True)
class DelaySpec:
    """Folded-normal stochastic delay |N(mu, sigma)| added to a link."""

    mu: float
    sigma: float

    def mean(self) -> float:
        if self.sigma == 0.0:
            return abs(self.mu)
        z = self.mu / self.sigma
        return self.sigma * math.sqrt(2.0 / math.pi) * math.exp(-0.5 * z * z) + self.mu * math.erf(
            z / math.sqrt(2.0)
        )

    def sample(self, rng) -> float:
        return abs(rng.gauss(self.mu, self.sigma))


@dataclass(frozen=True)
class CommLink:
    base_seconds: float
    delay: Optional[DelaySpec] = None
    per_byte_seconds: float = 0.0

    def expected_seconds(self, payload_bits: int) -> float:
        cost = self.base_seconds + self.per_byte_seconds * _payload_bytes(payload_bits)
        if self.delay is not None:
            cost += self.delay.mean()
        return cost


def _payload_bytes(payload_bits: int) -> int:
    return -(-payload_bits // 8)


@dataclass
class CommModel:
    """Directed link set; missing pairs are composed by cheapest declared path.

    Routes are chosen by expected total time and cached; same-node cost is 0.
    """

    links: Dict[Tuple[str, str], CommLink] = field(default_factory=dict)
    _routes: Dict[Tuple[str, str, int], Tuple[Tuple[str, str], ...]] = field(
        default_factory=dict, compare=False, repr=False
    )

    def resolve(
        self,
        src: str,
        dst: str,
        payload_bits: int = 0,
        mode: str = "mean",
        rng=None,
        delays: Optional[Dict[Tuple[str, str], float]] = None,
    ) -> float:
        """Seconds to ship payload_bits from src to dst.

        mode="mean" uses analytic folded-normal means; mode="sample" draws one
        delay per hop from rng.  A delays dict freezes per-link realizations
        (links absent from it fall back to their mean).
        """
        if src == dst:
            return 0.0
        total = 0.0
        for hop in self._route(src, dst, payload_bits):
            link = self.links[hop]
            total += link.base_seconds + link.per_byte_seconds * _payload_bytes(payload_bits)
            if link.delay is not None:
                if delays is not None:
                    total += delays.get(hop, link.delay.mean())
                elif mode == "sample":
                    if rng is None:
                        raise ValueError("mode='sample' requires rng")
                    total += link.delay.sample(rng)
                else:
                    total += link.delay.mean()
        return total

    def _route(self, src: str, dst: str, payload_bits: int) -> Tuple[Tuple[str, str], ...]:
        key = (src, dst, payload_bits)
        cached = self._routes.get(key)
        if cached is not None:
            return cached
        self._dijkstra(src, payload_bits)
        if key not in self._routes:
            raise CommUnreachableError(f"no communication path from {src!r} to {dst!r}")
        return self._routes[key]

    def _dijkstra(self, src: str, payload_bits: int) -> None:
        import heapq

        # Path tuples in the heap give a deterministic lexicographic tie-break
        # between equal-cost routes.
        out: Dict[str, List[str]] = {}
        for (u, v) in self.links:
            out.setdefault(u, []).append(v)
        for vs in out.values():
            vs.sort()
        heap: List[Tuple[float, Tuple[str, ...]]] = [(0.0, (src,))]
        done = set()
        while heap:
            cost, path = heapq.heappop(heap)
            node = path[-1]
            if node in done:
                continue
            done.add(node)
            hops = tuple(zip(path, path[1:]))
            self._routes[(src, node, payload_bits)] = hops
            for nxt in out.get(node, ()):
                if nxt in done:
                    continue
                step = self.links[(node, nxt)].expected_seconds(payload_bits)
                heapq.heappush(heap, (cost + step, path + (nxt,)))


@dataclass
class DependencyGraph:
    """DAG of algorithms; edges (producer, consumer)."""

    algorithms: Dict[str, "AlgorithmSpec"] = field(default_factory=dict)
    edges: Tuple[Tuple[str, str], ...] = ()

    def predecessors(self, alg_id: str) -> List[str]:
        return sorted(u for (u, v) in self.edges if v == alg_id)

    def successors(self, alg_id: str) -> List[str]:
        return sorted(v for (u, v) in self.edges if u == alg_id)


@dataclass(frozen=True)
class AlgorithmSpec:
    id: str
    exec_time: Dict[Tier, float] = field(default_factory=dict)
    node_overrides: Dict[str, float] = field(default_factory=dict)
    memory: MemoryProfile = MemoryProfile()
    space_rank: int = 0
    space_label: str = ""
    allowed_locations: Optional[FrozenSet[str]] = None

    def exec_time_at(self, node: LocationNode) -> float:
        if node.id in self.node_overrides:
            return self.node_overrides[node.id]
        try:
            return self.exec_time[node.tier]
        except KeyError:
            raise KeyError(f"algorithm {self.id!r} has no execution time for node {node.id!r}")

    def __eq__(self, other):  # dict fields block the generated frozen eq/hash
        if not isinstance(other, AlgorithmSpec):
            return NotImplemented
        return (
            self.id,
            self.exec_time,
            self.node_overrides,
            self.memory,
            self.space_rank,
            self.space_label,
            self.allowed_locations,
        ) == (
            other.id,
            other.exec_time,
            other.node_overrides,
            other.memory,
            other.space_rank,
            other.space_label,
            other.allowed_locations,
        )

    __hash__ = None


@dataclass
class Options:
    time_aggregate: str = "max_flow"  # max_flow | total_flows | mean_flows
    memory_weight: float = 1.0
    time_weight: float = 1.0
    boundedness_horizon: int = 16


@dataclass
class ProblemInstance:
    nodes: Dict[str, LocationNode] = field(default_factory=dict)
    regions: Dict[str, MemoryRegion] = field(default_factory=dict)
    graph: DependencyGraph = field(default_factory=DependencyGraph)
    comm: CommModel = field(default_factory=CommModel)
    options: Options = field(default_factory=Options)

    @property
    def algorithms(self) -> Dict[str, AlgorithmSpec]:
        return self.graph.algorithms

    def edge_node_id(self) -> str:
        edges = [n.id for n in self.nodes.values() if n.tier is Tier.EDGE]
        if len(edges) != 1:
            raise InfeasibleError(f"expected exactly one edge node, found {len(edges)}")
        return edges[0]

    def region_bits(self, region_id: str) -> int:
        return self.regions[region_id].size_bits


TIME_AGGREGATES = ("max_flow", "total_flows", "mean_flows")

# Tie-break order over nodes: cloud nodes by id, then fog nodes by id, then the
# edge node.  Placements are compared lexicographically in this order, so equal
# costs resolve toward the deepest offload.
_TIER_ORDER = {Tier.CLOUD: 0, Tier.FOG: 1, Tier.EDGE: 2}


def node_order(instance: ProblemInstance) -> List[str]:
    return [
        n.id
        for n in sorted(instance.nodes.values(), key=lambda n: (_TIER_ORDER[n.tier], n.id))
    ]


def unbounded_restrictions(profile: MemoryProfile, horizon: int) -> Tuple[str, ...]:
    """Names of memory components that strictly grow over steps 1..horizon."""
    if horizon < 2:
        return ()
    names = ("inputs", "processing", "outputs")
    return tuple(name for name, g in zip(names, profile.growth_per_step) if g > 0)


def effective_allowed(instance: ProblemInstance) -> Dict[str, Tuple[str, ...]]:
    """Allowed node ids per algorithm, in tie-break order.

    Algorithms with unbounded memory growth are restricted to cloud-tier nodes
    (their growth has to live on elastic storage, not on the robot or fog).
    """
    order = node_order(instance)
    rank = {nid: i for i, nid in enumerate(order)}
    horizon = instance.options.boundedness_horizon
    out: Dict[str, Tuple[str, ...]] = {}
    for aid, spec in instance.algorithms.items():
        allowed = set(spec.allowed_locations) if spec.allowed_locations is not None else set(order)
        if unbounded_restrictions(spec.memory, horizon):
            allowed = {nid for nid in allowed if instance.nodes[nid].tier is Tier.CLOUD}
        out[aid] = tuple(sorted(allowed, key=rank.__getitem__))
    return out


# ---------------------------------------------------------------------------
# Validation


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    members: Tuple[str, ...] = ()


@dataclass
class ValidationReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> List[str]:
        return [f"{v.kind}: {v.message}" for v in self.violations]


def _strongly_connected(edges: Iterable[Tuple[str, str]], vertices: Iterable[str]) -> List[List[str]]:
    """Tarjan SCCs (iterative), returned as sorted member lists."""
    adj: Dict[str, List[str]] = {v: [] for v in vertices}
    for u, v in edges:
        adj[u].append(v)
    index: Dict[str, int] = {}
    low: Dict[str, int] = {}
    on_stack = set()
    stack: List[str] = []
    sccs: List[List[str]] = []
    counter = [0]

    for root in sorted(adj):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                on_stack.add(v)
            advanced = False
            for i in range(pi, len(adj[v])):
                w = adj[v][i]
                if w not in index:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(sorted(comp))
    return sccs


def validate(instance: ProblemInstance) -> ValidationReport:
    """Collect every admissibility violation; an empty report means valid."""
    report = ValidationReport()
    nodes = instance.nodes
    algs = instance.algorithms

    edge_nodes = sorted(n.id for n in nodes.values() if n.tier is Tier.EDGE)
    if (nodes or algs) and not edge_nodes:
        report.violations.append(
            Violation("no-edge-node", "no edge-tier node: the robot is missing")
        )
    if len(edge_nodes) > 1:
        report.violations.append(
            Violation(
                "single-robot",
                f"single-robot violation: {len(edge_nodes)} edge nodes {edge_nodes}",
                tuple(edge_nodes),
            )
        )

    for scc in _strongly_connected(instance.graph.edges, algs):
        if len(scc) > 1:
            report.violations.append(
                Violation("cycle", f"dependency cycle through {', '.join(scc)}", tuple(scc))
            )

    allowed = effective_allowed(instance)
    for aid in sorted(algs):
        spec = algs[aid]
        declared = (
            sorted(spec.allowed_locations) if spec.allowed_locations is not None else sorted(nodes)
        )
        for nid in declared:
            node = nodes[nid]
            if nid not in spec.node_overrides and node.tier not in spec.exec_time:
                report.violations.append(
                    Violation(
                        "missing-exec-time",
                        f"algorithm {aid} has no execution time for allowed node {nid}",
                        (aid, nid),
                    )
                )
        if not allowed[aid]:
            report.violations.append(
                Violation(
                    "no-feasible-location",
                    f"algorithm {aid} has no feasible location "
                    "(allowed set empty after unbounded-growth restriction to cloud)",
                    (aid,),
                )
            )

    # Every ordered node pair must be resolvable: flow evaluation may route
    # between any two locations.
    reach: Dict[str, set] = {nid: {nid} for nid in nodes}
    for (u, v) in instance.comm.links:
        reach[u].add(v)
    changed = True
    while changed:
        changed = False
        for nid in reach:
            before = len(reach[nid])
            for mid in tuple(reach[nid]):
                reach[nid] |= reach[mid]
            if len(reach[nid]) != before:
                changed = True
    for u in sorted(nodes):
        for v in sorted(nodes):
            if v not in reach[u]:
                report.violations.append(
                    Violation("unreachable-pair", f"no communication path from {u} to {v}", (u, v))
                )

    return report


# ---------------------------------------------------------------------------
# Parsing / serialization

_TOP_KEYS = {"nodes", "regions", "algorithms", "edges", "comm", "options"}


def _reject_unknown(obj: dict, known: set, ctx: str) -> None:
    unknown = set(obj) - known
    if unknown:
        raise ProblemFormatError(f"{ctx}: unknown key(s) {sorted(unknown)}")


def _require(obj: dict, key: str, ctx: str):
    if key not in obj:
        raise ProblemFormatError(f"{ctx}: missing required key {key!r}")
    return obj[key]


def _time(value, ctx: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ProblemFormatError(f"{ctx}: expected a number, got {value!r}")
    if value < 0:
        raise ProblemFormatError(f"{ctx}: negative time {value!r}")
    return float(value)


def _bits(value, ctx: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ProblemFormatError(f"{ctx}: expected an integer bit count, got {value!r}")
    if value < 0:
        raise ProblemFormatError(f"{ctx}: negative size {value!r}")
    return value


def _ident(value, ctx: str) -> str:
    if not isinstance(value, str) or not value:
        raise ProblemFormatError(f"{ctx}: expected a non-empty string id, got {value!r}")
    return value


def parse_problem(text: str) -> ProblemInstance:
    """Parse instance JSON; raises ProblemFormatError with a position on bad syntax."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(
            f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise ProblemFormatError("top level must be a JSON object")
    return instance_from_dict(data)


def instance_from_dict(data: dict) -> ProblemInstance:
    _reject_unknown(data, _TOP_KEYS, "instance")

    nodes: Dict[str, LocationNode] = {}
    for entry in data.get("nodes", []):
        _reject_unknown(entry, {"id", "tier"}, "node")
        nid = _ident(_require(entry, "id", "node"), "node.id")
        if nid in nodes:
            raise ProblemFormatError(f"duplicate node id {nid!r}")
        tier_raw = _require(entry, "tier", f"node {nid}")
        try:
            tier = Tier(tier_raw)
        except ValueError:
            raise ProblemFormatError(f"node {nid}: unknown tier {tier_raw!r}")
        nodes[nid] = LocationNode(nid, tier)

    regions: Dict[str, MemoryRegion] = {}
    for entry in data.get("regions", []):
        _reject_unknown(entry, {"id", "size_bits"}, "region")
        rid = _ident(_require(entry, "id", "region"), "region.id")
        if rid in regions:
            raise ProblemFormatError(f"duplicate region id {rid!r}")
        regions[rid] = MemoryRegion(rid, _bits(_require(entry, "size_bits", f"region {rid}"), f"region {rid}"))

    algorithms: Dict[str, AlgorithmSpec] = {}
    for entry in data.get("algorithms", []):
        _reject_unknown(
            entry,
            {"id", "exec_time", "memory", "space_rank", "space_label", "allowed_locations"},
            "algorithm",
        )
        aid = _ident(_require(entry, "id", "algorithm"), "algorithm.id")
        if aid in algorithms:
            raise ProblemFormatError(f"duplicate algorithm id {aid!r}")

        exec_time: Dict[Tier, float] = {}
        overrides: Dict[str, float] = {}
        raw_exec = entry.get("exec_time", {})
        _reject_unknown(raw_exec, {"edge", "fog", "cloud", "overrides"}, f"algorithm {aid}.exec_time")
        for tier in Tier:
            if tier.value in raw_exec:
                exec_time[tier] = _time(raw_exec[tier.value], f"algorithm {aid}.exec_time.{tier.value}")
        for nid, secs in raw_exec.get("overrides", {}).items():
            if nid not in nodes:
                raise ProblemFormatError(f"algorithm {aid}: exec override for unknown node {nid!r}")
            overrides[nid] = _time(secs, f"algorithm {aid}.exec_time.overrides.{nid}")

        raw_mem = entry.get("memory", {})
        _reject_unknown(
            raw_mem,
            {"inputs", "outputs", "processing_bits", "growth_per_step"},
            f"algorithm {aid}.memory",
        )
        for key in ("inputs", "outputs"):
            for rid in raw_mem.get(key, []):
                if rid not in regions:
                    raise ProblemFormatError(f"algorithm {aid}: unknown region {rid!r} in memory.{key}")
        raw_growth = raw_mem.get("growth_per_step", {})
        _reject_unknown(raw_growth, {"inputs", "processing", "outputs"}, f"algorithm {aid}.growth_per_step")
        growth = tuple(
            _bits(raw_growth.get(key, 0), f"algorithm {aid}.growth_per_step.{key}")
            for key in ("inputs", "processing", "outputs")
        )
        profile = MemoryProfile(
            inputs=frozenset(raw_mem.get("inputs", [])),
            outputs=frozenset(raw_mem.get("outputs", [])),
            processing_bits=_bits(raw_mem.get("processing_bits", 0), f"algorithm {aid}.processing_bits"),
            growth_per_step=growth,
        )

        allowed = None
        if "allowed_locations" in entry:
            allowed_list = entry["allowed_locations"]
            for nid in allowed_list:
                if nid not in nodes:
                    raise ProblemFormatError(f"algorithm {aid}: unknown node {nid!r} in allowed_locations")
            allowed = frozenset(allowed_list)

        rank = entry.get("space_rank", 0)
        if isinstance(rank, bool) or not isinstance(rank, int):
            raise ProblemFormatError(f"algorithm {aid}: space_rank must be an integer")

        algorithms[aid] = AlgorithmSpec(
            id=aid,
            exec_time=exec_time,
            node_overrides=overrides,
            memory=profile,
            space_rank=rank,
            space_label=entry.get("space_label", ""),
            allowed_locations=allowed,
        )

    seen_edges = set()
    edges: List[Tuple[str, str]] = []
    for entry in data.get("edges", []):
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise ProblemFormatError(f"edge {entry!r}: expected a [from, to] pair")
        u, v = entry
        for endpoint in (u, v):
            if endpoint not in algorithms:
                raise ProblemFormatError(f"edge ({u!r}, {v!r}): unknown algorithm {endpoint!r}")
        if u == v:
            raise ProblemFormatError(f"edge ({u!r}, {v!r}): self-loop")
        if (u, v) in seen_edges:
            raise ProblemFormatError(f"duplicate edge ({u!r}, {v!r})")
        seen_edges.add((u, v))
        edges.append((u, v))

    links: Dict[Tuple[str, str], CommLink] = {}
    for entry in data.get("comm", []):
        _reject_unknown(entry, {"from", "to", "base_seconds", "delay", "per_byte_seconds"}, "comm link")
        u = _ident(_require(entry, "from", "comm link"), "comm.from")
        v = _ident(_require(entry, "to", "comm link"), "comm.to")
        for endpoint in (u, v):
            if endpoint not in nodes:
                raise ProblemFormatError(f"comm link ({u!r}, {v!r}): unknown node {endpoint!r}")
        if u == v:
            raise ProblemFormatError(f"comm link ({u!r}, {v!r}): same-node links are implicit")
        if (u, v) in links:
            raise ProblemFormatError(f"duplicate comm link ({u!r}, {v!r})")
        delay = None
        if "delay" in entry and entry["delay"] is not None:
            raw_delay = entry["delay"]
            _reject_unknown(raw_delay, {"mu", "sigma"}, f"comm link ({u}, {v}).delay")
            mu = _require(raw_delay, "mu", f"comm link ({u}, {v}).delay")
            if isinstance(mu, bool) or not isinstance(mu, (int, float)):
                raise ProblemFormatError(f"comm link ({u}, {v}).delay.mu: expected a number")
            sigma = _time(_require(raw_delay, "sigma", f"comm link ({u}, {v}).delay"), f"comm link ({u}, {v}).delay.sigma")
            delay = DelaySpec(float(mu), sigma)
        links[(u, v)] = CommLink(
            base_seconds=_time(_require(entry, "base_seconds", f"comm link ({u}, {v})"), f"comm link ({u}, {v}).base_seconds"),
            delay=delay,
            per_byte_seconds=_time(entry.get("per_byte_seconds", 0.0), f"comm link ({u}, {v}).per_byte_seconds"),
        )

    raw_opts = data.get("options", {})
    _reject_unknown(
        raw_opts,
        {"time_aggregate", "memory_weight", "time_weight", "boundedness_horizon"},
        "options",
    )
    aggregate = raw_opts.get("time_aggregate", "max_flow")
    if aggregate not in TIME_AGGREGATES:
        raise ProblemFormatError(f"options.time_aggregate: unknown aggregate {aggregate!r}")
    w_m = _time(raw_opts.get("memory_weight", 1.0), "options.memory_weight")
    w_t = _time(raw_opts.get("time_weight", 1.0), "options.time_weight")
    if w_m <= 0 or w_t <= 0:
        raise ProblemFormatError("options: weights must be positive")
    horizon = raw_opts.get("boundedness_horizon", 16)
    if isinstance(horizon, bool) or not isinstance(horizon, int) or horizon < 1:
        raise ProblemFormatError("options.boundedness_horizon: expected an integer >= 1")

    return ProblemInstance(
        nodes=nodes,
        regions=regions,
        graph=DependencyGraph(algorithms=algorithms, edges=tuple(sorted(edges))),
        comm=CommModel(links=links),
        options=Options(
            time_aggregate=aggregate,
            memory_weight=w_m,
            time_weight=w_t,
            boundedness_horizon=horizon,
        ),
    )


def instance_to_dict(instance: ProblemInstance) -> dict:
    """Canonical plain-dict form (stable ordering, round-trips via parse)."""
    algorithms = []
    for aid in sorted(instance.algorithms):
        spec = instance.algorithms[aid]
        exec_time: dict = {tier.value: spec.exec_time[tier] for tier in Tier if tier in spec.exec_time}
        if spec.node_overrides:
            exec_time["overrides"] = {nid: spec.node_overrides[nid] for nid in sorted(spec.node_overrides)}
        entry: dict = {
            "id": aid,
            "exec_time": exec_time,
            "memory": {
                "inputs": sorted(spec.memory.inputs),
                "outputs": sorted(spec.memory.outputs),
                "processing_bits": spec.memory.processing_bits,
                "growth_per_step": dict(
                    zip(("inputs", "processing", "outputs"), spec.memory.growth_per_step)
                ),
            },
            "space_rank": spec.space_rank,
        }
        if spec.space_label:
            entry["space_label"] = spec.space_label
        if spec.allowed_locations is not None:
            entry["allowed_locations"] = sorted(spec.allowed_locations)
        algorithms.append(entry)

    comm = []
    for (u, v) in sorted(instance.comm.links):
        link = instance.comm.links[(u, v)]
        entry = {"from": u, "to": v, "base_seconds": link.base_seconds}
        if link.delay is not None:
            entry["delay"] = {"mu": link.delay.mu, "sigma": link.delay.sigma}
        if link.per_byte_seconds:
            entry["per_byte_seconds"] = link.per_byte_seconds
        comm.append(entry)

    return {
        "nodes": [
            {"id": nid, "tier": instance.nodes[nid].tier.value} for nid in sorted(instance.nodes)
        ],
        "regions": [
            {"id": rid, "size_bits": instance.regions[rid].size_bits}
            for rid in sorted(instance.regions)
        ],
        "algorithms": algorithms,
        "edges": [list(e) for e in sorted(instance.graph.edges)],
        "comm": comm,
        "options": {
            "time_aggregate": instance.options.time_aggregate,
            "memory_weight": instance.options.memory_weight,
            "time_weight": instance.options.time_weight,
            "boundedness_horizon": instance.options.boundedness_horizon,
        },
    }


def serialize_problem(instance: ProblemInstance) -> str:
    return json.dumps(instance_to_dict(instance), indent=2, sort_keys=True) + "\n"
