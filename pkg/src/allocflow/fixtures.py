"""Bundled example instances (plain dicts, ready to serialize or parse).

- single_sort: one sort algorithm, fixed per-tier transfer times.
- sort_tradeoff(x): one sort algorithm, symmetric transfer time x between
  neighbouring tiers; the optimal tier flips as x grows.
- dataset_pipeline(d): a 500 MB dataset feeding two independent consumers,
  one of which feeds a third algorithm; transmission time d between
  neighbouring tiers.  dataset_jitter adds |N(0, 1)| link jitter at d = 2.
- vision_pipeline: a seven-stage image pipeline (two parallel branches) on
  one edge node, three fog nodes, and two cloud VMs with measured per-message
  transfer times and folded-normal delays.
- cyclic_invalid: a three-algorithm dependency cycle, for validation demos.
"""

from __future__ import annotations

import json
import os
from typing import Dict, List, Optional

MB = 8 * 1024 * 1024  # bits per megabyte


def _node(nid: str, tier: str) -> dict:
    return {"id": nid, "tier": tier}


def _link(u: str, v: str, seconds: float, mu: Optional[float] = None, sigma: Optional[float] = None) -> dict:
    entry: dict = {"from": u, "to": v, "base_seconds": seconds}
    if mu is not None:
        entry["delay"] = {"mu": mu, "sigma": sigma}
    return entry


def single_sort() -> dict:
    """Sort 5 s on the robot, 3.33 s on fog, 1 s on cloud; transfers 1.5/3 s."""
    return {
        "nodes": [_node("e", "edge"), _node("f", "fog"), _node("c", "cloud")],
        "regions": [],
        "algorithms": [
            {
                "id": "sort",
                "exec_time": {"edge": 5.0, "fog": 5.0 / 1.5, "cloud": 1.0},
                "memory": {"inputs": [], "outputs": [], "processing_bits": 0},
                "space_rank": 0,
            }
        ],
        "edges": [],
        "comm": [
            _link("e", "f", 1.5),
            _link("f", "e", 1.5),
            _link("e", "c", 3.0),
            _link("c", "e", 3.0),
        ],
        "options": {},
    }


def sort_tradeoff(x: float = 1.0) -> dict:
    """Sort 5/2/1 s on edge/fog/cloud; x s per hop between neighbouring tiers."""
    return {
        "nodes": [_node("e", "edge"), _node("f", "fog"), _node("c", "cloud")],
        "regions": [],
        "algorithms": [
            {
                "id": "sort",
                "exec_time": {"edge": 5.0, "fog": 2.0, "cloud": 1.0},
                "memory": {"inputs": [], "outputs": [], "processing_bits": 0},
                "space_rank": 0,
            }
        ],
        "edges": [],
        "comm": [
            _link("e", "f", x),
            _link("f", "e", x),
            _link("f", "c", x),
            _link("c", "f", x),
        ],
        "options": {},
    }


def dataset_pipeline(d: float = 2.0, jitter_sigma: float = 0.0) -> dict:
    """500 MB dataset read by two algorithms, one feeding a third.

    Execution seconds (edge/fog/cloud): dataset 0/0/0, stage_a 2/1/0.5,
    stage_b 4/2/1, stage_c 6/3/1.5.  Processing footprints 300/50/100 MB.
    """
    mu_sigma = (0.0, jitter_sigma) if jitter_sigma else (None, None)
    return {
        "nodes": [_node("e", "edge"), _node("f", "fog"), _node("c", "cloud")],
        "regions": [{"id": "dataset", "size_bits": 500 * MB}],
        "algorithms": [
            {
                "id": "data",
                "exec_time": {"edge": 0.0, "fog": 0.0, "cloud": 0.0},
                "memory": {"inputs": [], "outputs": ["dataset"], "processing_bits": 0},
                "space_rank": 0,
                "space_label": "O(1)",
            },
            {
                "id": "stage_a",
                "exec_time": {"edge": 2.0, "fog": 1.0, "cloud": 0.5},
                "memory": {"inputs": ["dataset"], "outputs": [], "processing_bits": 300 * MB},
                "space_rank": 3,
                "space_label": "O(n^2)",
            },
            {
                "id": "stage_b",
                "exec_time": {"edge": 4.0, "fog": 2.0, "cloud": 1.0},
                "memory": {"inputs": ["dataset"], "outputs": [], "processing_bits": 50 * MB},
                "space_rank": 1,
                "space_label": "O(n)",
            },
            {
                "id": "stage_c",
                "exec_time": {"edge": 6.0, "fog": 3.0, "cloud": 1.5},
                "memory": {"inputs": [], "outputs": [], "processing_bits": 100 * MB},
                "space_rank": 2,
                "space_label": "O(n log n)",
            },
        ],
        "edges": [["data", "stage_a"], ["data", "stage_b"], ["stage_a", "stage_c"]],
        "comm": [
            _link("e", "f", d, *mu_sigma),
            _link("f", "e", d, *mu_sigma),
            _link("f", "c", d, *mu_sigma),
            _link("c", "f", d, *mu_sigma),
        ],
        "options": {},
    }


def dataset_jitter() -> dict:
    return dataset_pipeline(d=2.0, jitter_sigma=1.0)


# Measured per-message transfer seconds between tiers: base + |N(mu, sigma)|.
# The edge talks to the clouds through the fog tier, so no direct edge-cloud
# link is declared; resolution composes the cheapest two-hop route.
_TIER_LINKS = {
    ("cloud", "fog"): (0.439, 0.188, 0.087),
    ("fog", "cloud"): (0.417, 0.367, 0.365),
    ("fog", "edge"): (0.475, 0.187, 0.397),
    ("edge", "fog"): (0.447, 0.182, 0.111),
    ("cloud", "cloud"): (0.112, 0.030, 0.018),
    ("fog", "fog"): (0.115, 0.047, 0.025),
}

# id: (edge_s, fog_s, cloud_s, input_bits, output_bits, processing_bytes, label, rank)
_PIPELINE_STAGES = {
    "A1": (0.445, 0.153, 0.047, 4718592, 1120, 14619367, "O(nm)", 3),
    "A2": (4.475, 1.538, 0.470, 47185920, 11200, 11683901, "O(n)", 2),
    "A3": (7.2e-4, 4.1e-4, 1.5e-4, 11200, 11200, 11684220, "O(n)", 2),
    "A4": (2.0e-4, 7.74e-5, 3.46e-5, 11200, 0, 7799083, "O(m)", 1),
    "A5": (6.61e-5, 1.94e-5, 9.96e-6, 11200, 11200, 11253700, "O(m)", 1),
    "A6": (2.1e-4, 1.3e-4, 4.75e-5, 11200, 1120, 11261700, "O(nm)", 3),
    "A7": (1.09e-3, 4.01e-3, 2.7e-4, 4718592, 4718592, 8010779, "O(n)", 2),
}

_PIPELINE_EDGES = [
    ["A1", "A2"],
    ["A2", "A3"],
    ["A2", "A4"],
    ["A3", "A6"],
    ["A4", "A5"],
    ["A5", "A6"],
    ["A6", "A7"],
]


def vision_pipeline() -> dict:
    """Seven-stage feature/database pipeline over 1 edge, 3 fog, 2 cloud nodes."""
    nodes = [
        _node("e", "edge"),
        _node("f1", "fog"),
        _node("f2", "fog"),
        _node("f3", "fog"),
        _node("c1", "cloud"),
        _node("c2", "cloud"),
    ]
    tier = {n["id"]: n["tier"] for n in nodes}

    regions: List[dict] = []
    algorithms: List[dict] = []
    for aid, (edge_s, fog_s, cloud_s, in_bits, out_bits, pr_bytes, label, rank) in _PIPELINE_STAGES.items():
        regions.append({"id": f"in_{aid}", "size_bits": in_bits})
        regions.append({"id": f"out_{aid}", "size_bits": out_bits})
        algorithms.append(
            {
                "id": aid,
                "exec_time": {"edge": edge_s, "fog": fog_s, "cloud": cloud_s},
                "memory": {
                    "inputs": [f"in_{aid}"],
                    "outputs": [f"out_{aid}"],
                    "processing_bits": pr_bytes * 8,
                },
                "space_rank": rank,
                "space_label": label,
            }
        )

    comm = []
    for u in sorted(tier):
        for v in sorted(tier):
            if u == v:
                continue
            params = _TIER_LINKS.get((tier[u], tier[v]))
            if params is None:
                continue
            base, mu, sigma = params
            comm.append(_link(u, v, base, mu, sigma))

    return {
        "nodes": nodes,
        "regions": sorted(regions, key=lambda r: r["id"]),
        "algorithms": algorithms,
        "edges": _PIPELINE_EDGES,
        "comm": comm,
        "options": {},
    }


def cyclic_invalid() -> dict:
    return {
        "nodes": [_node("e", "edge")],
        "regions": [],
        "algorithms": [
            {"id": aid, "exec_time": {"edge": 1.0}, "memory": {}, "space_rank": 0}
            for aid in ("A", "B", "C")
        ],
        "edges": [["A", "B"], ["B", "C"], ["C", "A"]],
        "comm": [],
        "options": {},
    }


def bundled() -> Dict[str, dict]:
    return {
        "single_sort": single_sort(),
        "sort_tradeoff_x1": sort_tradeoff(1.0),
        "dataset_d1": dataset_pipeline(1.0),
        "dataset_d2": dataset_pipeline(2.0),
        "dataset_d4": dataset_pipeline(4.0),
        "dataset_d6": dataset_pipeline(6.0),
        "dataset_jitter": dataset_jitter(),
        "vision_pipeline": vision_pipeline(),
        "cyclic_invalid": cyclic_invalid(),
    }


def write_examples(directory: str) -> List[str]:
    """Write every bundled fixture as <name>.json; returns the paths written."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    for name, data in bundled().items():
        path = os.path.join(directory, f"{name}.json")
        with open(path, "w") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)
            fh.write("\n")
        paths.append(path)
    return paths
