"""Parsing, validation, communication resolution, and delay specs."""

import json
import math

import pytest
from hypothesis import given, strategies as st

from allocflow import fixtures
from allocflow.model import (
    CommLink,
    CommModel,
    CommUnreachableError,
    DelaySpec,
    MemoryProfile,
    ProblemFormatError,
    Tier,
    effective_allowed,
    instance_from_dict,
    instance_to_dict,
    parse_problem,
    serialize_problem,
    unbounded_restrictions,
    validate,
)


def minimal() -> dict:
    return {
        "nodes": [{"id": "e", "tier": "edge"}],
        "regions": [],
        "algorithms": [
            {"id": "a", "exec_time": {"edge": 1.0}, "memory": {}, "space_rank": 0}
        ],
        "edges": [],
        "comm": [],
        "options": {},
    }


# ---------------------------------------------------------------------------
# Parse errors


def test_syntax_error_reports_position():
    with pytest.raises(ProblemFormatError, match=r"syntax error at line 2 column 12"):
        parse_problem('{\n  "nodes": oops\n}')


def test_top_level_must_be_object():
    with pytest.raises(ProblemFormatError, match="top level"):
        parse_problem("[1, 2]")


def test_unknown_top_level_key_rejected():
    data = minimal()
    data["extra"] = 1
    with pytest.raises(ProblemFormatError, match=r"unknown key\(s\) \['extra'\]"):
        instance_from_dict(data)


@pytest.mark.parametrize(
    "mutate, pattern",
    [
        (lambda d: d["nodes"].append({"id": "e", "tier": "edge"}), "duplicate node"),
        (lambda d: d["nodes"].append({"id": "x", "tier": "mist"}), "unknown tier"),
        (lambda d: d["nodes"].append({"id": "x"}), "missing required key"),
        (lambda d: d["nodes"].append({"id": "", "tier": "fog"}), "non-empty string"),
        (lambda d: d["algorithms"].append(dict(d["algorithms"][0])), "duplicate algorithm"),
        (lambda d: d["algorithms"][0].__setitem__("bogus", 1), "unknown key"),
        (lambda d: d["algorithms"][0]["exec_time"].__setitem__("edge", -1.0), "negative time"),
        (lambda d: d["algorithms"][0]["exec_time"].__setitem__("edge", True), "expected a number"),
        (lambda d: d["algorithms"][0]["exec_time"].__setitem__("lake", 1.0), "unknown key"),
        (lambda d: d["algorithms"][0]["memory"].__setitem__("inputs", ["ghost"]), "unknown region"),
        (lambda d: d["algorithms"][0].__setitem__("space_rank", 1.5), "must be an integer"),
        (lambda d: d["algorithms"][0].__setitem__("allowed_locations", ["nope"]), "unknown node"),
        (lambda d: d["edges"].append(["a", "a"]), "self-loop"),
        (lambda d: d["edges"].append(["a", "ghost"]), "unknown algorithm"),
        (lambda d: d["edges"].append("a->b"), "expected a .from, to. pair"),
        (lambda d: d["comm"].append({"from": "e", "to": "e", "base_seconds": 1.0}), "same-node"),
        (lambda d: d["comm"].append({"from": "e", "to": "ghost", "base_seconds": 1.0}), "unknown node"),
        (lambda d: d["options"].__setitem__("time_aggregate", "median"), "unknown aggregate"),
        (lambda d: d["options"].__setitem__("memory_weight", 0.0), "weights must be positive"),
        (lambda d: d["options"].__setitem__("boundedness_horizon", 0), "integer >= 1"),
    ],
)
def test_malformed_instances_rejected(mutate, pattern):
    data = minimal()
    mutate(data)
    with pytest.raises(ProblemFormatError, match=pattern):
        instance_from_dict(data)


def test_duplicate_region_rejected():
    data = minimal()
    data["regions"] = [{"id": "r", "size_bits": 8}, {"id": "r", "size_bits": 16}]
    with pytest.raises(ProblemFormatError, match="duplicate region"):
        instance_from_dict(data)


def test_duplicate_edge_rejected():
    data = minimal()
    data["algorithms"].append(
        {"id": "b", "exec_time": {"edge": 1.0}, "memory": {}, "space_rank": 0}
    )
    data["edges"] = [["a", "b"], ["a", "b"]]
    with pytest.raises(ProblemFormatError, match="duplicate edge"):
        instance_from_dict(data)


def test_duplicate_comm_link_rejected():
    data = minimal()
    data["nodes"].append({"id": "f", "tier": "fog"})
    data["comm"] = [
        {"from": "e", "to": "f", "base_seconds": 1.0},
        {"from": "e", "to": "f", "base_seconds": 2.0},
    ]
    with pytest.raises(ProblemFormatError, match="duplicate comm link"):
        instance_from_dict(data)


def test_region_bits_must_be_integer():
    data = minimal()
    data["regions"] = [{"id": "r", "size_bits": 7.5}]
    with pytest.raises(ProblemFormatError, match="integer bit count"):
        instance_from_dict(data)


def test_exec_override_unknown_node_rejected():
    data = minimal()
    data["algorithms"][0]["exec_time"]["overrides"] = {"ghost": 1.0}
    with pytest.raises(ProblemFormatError, match="unknown node"):
        instance_from_dict(data)


def test_delay_requires_mu_and_sigma():
    data = minimal()
    data["nodes"].append({"id": "f", "tier": "fog"})
    data["comm"] = [{"from": "e", "to": "f", "base_seconds": 1.0, "delay": {"mu": 0.1}}]
    with pytest.raises(ProblemFormatError, match="missing required key 'sigma'"):
        instance_from_dict(data)


# ---------------------------------------------------------------------------
# Round trips


@pytest.mark.parametrize("name", sorted(fixtures.bundled()))
def test_serialize_parse_round_trip(name):
    instance = instance_from_dict(fixtures.bundled()[name])
    text = serialize_problem(instance)
    again = parse_problem(text)
    assert instance_to_dict(again) == instance_to_dict(instance)
    assert serialize_problem(again) == text


def test_serialized_form_is_stable_json():
    text = serialize_problem(instance_from_dict(fixtures.single_sort()))
    assert text == json.dumps(json.loads(text), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# Validation


def test_valid_fixtures_have_clean_reports():
    for name, data in fixtures.bundled().items():
        if name == "cyclic_invalid":
            continue
        assert validate(instance_from_dict(data)).ok, name


def test_cycle_reported_with_members():
    report = validate(instance_from_dict(fixtures.cyclic_invalid()))
    kinds = [v.kind for v in report.violations]
    assert "cycle" in kinds
    cycle = next(v for v in report.violations if v.kind == "cycle")
    assert set(cycle.members) == {"A", "B", "C"}


def test_missing_edge_node_reported():
    data = minimal()
    data["nodes"][0]["tier"] = "fog"
    data["algorithms"][0]["exec_time"] = {"fog": 1.0}
    report = validate(instance_from_dict(data))
    assert any(v.kind == "no-edge-node" for v in report.violations)


def test_two_edge_nodes_reported():
    data = minimal()
    data["nodes"].append({"id": "e2", "tier": "edge"})
    data["comm"] = [
        {"from": "e", "to": "e2", "base_seconds": 1.0},
        {"from": "e2", "to": "e", "base_seconds": 1.0},
    ]
    report = validate(instance_from_dict(data))
    assert any(v.kind == "single-robot" for v in report.violations)


def test_missing_exec_time_reported():
    data = minimal()
    data["nodes"].append({"id": "f", "tier": "fog"})
    data["comm"] = [
        {"from": "e", "to": "f", "base_seconds": 1.0},
        {"from": "f", "to": "e", "base_seconds": 1.0},
    ]
    # algorithm "a" has only an edge exec time but f is allowed by default
    report = validate(instance_from_dict(data))
    assert any(v.kind == "missing-exec-time" and v.members == ("a", "f") for v in report.violations)


def test_unreachable_pair_reported():
    data = minimal()
    data["nodes"].append({"id": "f", "tier": "fog"})
    data["algorithms"][0]["exec_time"]["fog"] = 1.0
    data["comm"] = [{"from": "e", "to": "f", "base_seconds": 1.0}]  # no way back
    report = validate(instance_from_dict(data))
    assert any(v.kind == "unreachable-pair" and v.members == ("f", "e") for v in report.violations)


def test_unbounded_growth_off_cloud_reported():
    data = minimal()
    data["algorithms"][0]["memory"]["growth_per_step"] = {"processing": 8}
    report = validate(instance_from_dict(data))
    assert any(v.kind == "no-feasible-location" for v in report.violations)


def test_report_lines_format():
    report = validate(instance_from_dict(fixtures.cyclic_invalid()))
    assert all(": " in line for line in report.lines())
    assert not report.ok


# ---------------------------------------------------------------------------
# Unbounded-growth location narrowing


def test_growth_restricts_to_cloud():
    data = minimal()
    data["nodes"] += [{"id": "f", "tier": "fog"}, {"id": "c", "tier": "cloud"}]
    data["algorithms"][0]["exec_time"] = {"edge": 1.0, "fog": 1.0, "cloud": 1.0}
    data["algorithms"][0]["memory"]["growth_per_step"] = {"inputs": 1}
    data["comm"] = [
        {"from": "e", "to": "f", "base_seconds": 1.0},
        {"from": "f", "to": "e", "base_seconds": 1.0},
        {"from": "f", "to": "c", "base_seconds": 1.0},
        {"from": "c", "to": "f", "base_seconds": 1.0},
    ]
    instance = instance_from_dict(data)
    assert effective_allowed(instance)["a"] == ("c",)


def test_unbounded_restrictions_names_growing_components():
    profile = MemoryProfile(growth_per_step=(1, 0, 2))
    assert unbounded_restrictions(profile, 16) == ("inputs", "outputs")
    assert unbounded_restrictions(profile, 1) == ()  # a single step cannot grow


# ---------------------------------------------------------------------------
# Delay specs


def test_folded_normal_standard_mean():
    assert DelaySpec(0.0, 1.0).mean() == pytest.approx(math.sqrt(2.0 / math.pi), abs=1e-12)


def test_folded_normal_degenerate_sigma():
    assert DelaySpec(0.188, 0.0).mean() == 0.188
    assert DelaySpec(-0.4, 0.0).mean() == 0.4


def test_folded_normal_closed_form_value():
    assert DelaySpec(0.188, 0.087).mean() == pytest.approx(0.18894973393641776, abs=1e-15)


@given(mu=st.floats(-3, 3), sigma=st.floats(0.001, 2))
def test_folded_normal_mean_at_least_abs_mu(mu, sigma):
    assert DelaySpec(mu, sigma).mean() >= abs(mu) - 1e-12


# ---------------------------------------------------------------------------
# Communication resolution


def comm_of(instance_dict) -> CommModel:
    return instance_from_dict(instance_dict).comm


def test_same_node_costs_zero(single_sort):
    assert single_sort.comm.resolve("e", "e", 10**9) == 0.0


def test_direct_link_cost(single_sort):
    assert single_sort.comm.resolve("e", "f", 0) == 1.5
    assert single_sort.comm.resolve("e", "c", 0) == 3.0


def test_missing_pair_composes_cheapest_route():
    data = fixtures.sort_tradeoff(1.0)  # declares only e<->f and f<->c
    comm = comm_of(data)
    assert comm.resolve("e", "c", 0) == 2.0  # e->f->c


def test_asymmetric_links_resolve_directionally():
    data = minimal()
    data["nodes"].append({"id": "f", "tier": "fog"})
    data["comm"] = [
        {"from": "e", "to": "f", "base_seconds": 1.0},
        {"from": "f", "to": "e", "base_seconds": 5.0},
    ]
    comm = comm_of(data)
    assert comm.resolve("e", "f", 0) == 1.0
    assert comm.resolve("f", "e", 0) == 5.0


def test_unreachable_destination_raises():
    data = minimal()
    data["nodes"].append({"id": "f", "tier": "fog"})
    data["comm"] = [{"from": "e", "to": "f", "base_seconds": 1.0}]
    comm = comm_of(data)
    with pytest.raises(CommUnreachableError, match="no communication path"):
        comm.resolve("f", "e", 0)


def test_per_byte_cost_rounds_payload_up_to_bytes():
    comm = CommModel(links={("u", "v"): CommLink(base_seconds=1.0, per_byte_seconds=0.5)})
    assert comm.resolve("u", "v", 0) == 1.0
    assert comm.resolve("u", "v", 1) == 1.5  # 1 bit still ships one byte
    assert comm.resolve("u", "v", 16) == 2.0


def test_delay_mean_added_and_override_respected():
    link = CommLink(base_seconds=1.0, delay=DelaySpec(0.0, 1.0))
    comm = CommModel(links={("u", "v"): link})
    expected = 1.0 + DelaySpec(0.0, 1.0).mean()
    assert comm.resolve("u", "v", 0) == pytest.approx(expected)
    # frozen realization replaces the mean
    assert comm.resolve("u", "v", 0, delays={("u", "v"): 0.25}) == 1.25
    # links absent from the dict fall back to their mean
    assert comm.resolve("u", "v", 0, delays={}) == pytest.approx(expected)


def test_sample_mode_requires_rng():
    link = CommLink(base_seconds=1.0, delay=DelaySpec(0.0, 1.0))
    comm = CommModel(links={("u", "v"): link})
    with pytest.raises(ValueError, match="requires rng"):
        comm.resolve("u", "v", 0, mode="sample")


def test_route_choice_prefers_cheaper_two_hop():
    comm = CommModel(
        links={
            ("a", "b"): CommLink(10.0),
            ("a", "m"): CommLink(1.0),
            ("m", "b"): CommLink(1.0),
        }
    )
    assert comm.resolve("a", "b", 0) == 2.0


def test_tier_enum_round_trip():
    assert Tier("edge") is Tier.EDGE
    assert {t.value for t in Tier} == {"edge", "fog", "cloud"}
