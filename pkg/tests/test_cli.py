"""End-to-end subcommand behaviour: output bytes, exit codes, determinism."""

import json
import math

import pytest

from allocflow import fixtures
from allocflow.cli import main

FOG_TIME = 1.5 + 5.0 / 1.5 + 1.5


def write_instance(tmp_path, data, name="problem.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    return str(path)


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


# ---------------------------------------------------------------------------
# validate


def test_validate_ok(tmp_path, capsys):
    path = write_instance(tmp_path, fixtures.single_sort())
    rc, out, err = run(capsys, "validate", path)
    assert (rc, out, err) == (0, "ok\n", "")


def test_validate_reports_violations(tmp_path, capsys):
    path = write_instance(tmp_path, fixtures.cyclic_invalid())
    rc, out, err = run(capsys, "validate", path)
    assert rc == 1
    assert "cycle:" in out


def test_validate_bad_json(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{nope")
    rc, out, err = run(capsys, "validate", str(path))
    assert rc == 1
    assert err.startswith("invalid: syntax error")


def test_validate_writes_out_file(tmp_path, capsys):
    path = write_instance(tmp_path, fixtures.single_sort())
    target = tmp_path / "report.txt"
    rc, out, _ = run(capsys, "validate", path, "--out", str(target))
    assert rc == 0
    assert out == ""
    assert target.read_text() == "ok\n"


def test_missing_file(tmp_path, capsys):
    rc, _, err = run(capsys, "flows", str(tmp_path / "absent.json"))
    assert rc == 1
    assert err.startswith("error: cannot read")


# ---------------------------------------------------------------------------
# flows


def test_flows_listing(tmp_path, capsys):
    path = write_instance(tmp_path, fixtures.dataset_pipeline(2.0))
    rc, out, _ = run(capsys, "flows", path)
    assert rc == 0
    assert out == "data,stage_a,stage_c\ndata,stage_b\n"


def test_flows_count_only(tmp_path, capsys):
    path = write_instance(tmp_path, fixtures.dataset_pipeline(2.0))
    rc, out, _ = run(capsys, "flows", path, "--count-only")
    assert (rc, out) == (0, "2\n")


def test_flow_cap_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("ALLOCFLOW_FLOW_CAP", "1")
    path = write_instance(tmp_path, fixtures.dataset_pipeline(2.0))
    rc, _, err = run(capsys, "flows", path)
    assert rc == 3
    assert err.startswith("error: flow explosion")


# ---------------------------------------------------------------------------
# time


def test_time_default_placement_breakdown(tmp_path, capsys):
    path = write_instance(tmp_path, fixtures.dataset_pipeline(2.0))
    rc, out, _ = run(capsys, "time", path)
    assert rc == 0
    assert out == (
        "flow,request_s,exec_s,inter_s,return_s,total_s\n"
        "data;stage_a;stage_c,0.0,8.0,0.0,0.0,8.0\n"
        "data;stage_b,0.0,4.0,0.0,0.0,4.0\n"
        "# aggregate=max_flow overall_seconds=8.0\n"
    )


def test_time_with_placement_and_aggregate(tmp_path, capsys):
    path = write_instance(tmp_path, fixtures.dataset_pipeline(2.0))
    placement = tmp_path / "placement.json"
    placement.write_text(json.dumps({aid: "f" for aid in ("data", "stage_a", "stage_b", "stage_c")}))
    rc, out, _ = run(capsys, "time", path, "--placement", str(placement), "--aggregate", "total")
    assert rc == 0
    lines = out.splitlines()
    assert lines[1] == "data;stage_a;stage_c,2.0,4.0,0.0,2.0,8.0"
    assert lines[2] == "data;stage_b,2.0,2.0,0.0,2.0,6.0"
    assert lines[3] == "# aggregate=total_flows overall_seconds=14.0"


def test_time_rejects_infeasible_placement(tmp_path, capsys):
    path = write_instance(tmp_path, fixtures.dataset_pipeline(2.0))
    placement = tmp_path / "short.json"
    placement.write_text(json.dumps({"data": "e"}))
    rc, _, err = run(capsys, "time", path, "--placement", str(placement))
    assert rc == 1
    assert "misses algorithm" in err


def test_time_rejects_non_mapping_placement(tmp_path, capsys):
    path = write_instance(tmp_path, fixtures.dataset_pipeline(2.0))
    placement = tmp_path / "list.json"
    placement.write_text('["e", "f"]')
    rc, _, err = run(capsys, "time", path, "--placement", str(placement))
    assert rc == 1
    assert "placement must map" in err


# ---------------------------------------------------------------------------
# memory


def test_memory_default_placement(tmp_path, capsys):
    path = write_instance(tmp_path, fixtures.dataset_pipeline(2.0))
    rc, out, _ = run(capsys, "memory", path)
    assert rc == 0
    assert out == (
        "location,bytes\n"
        "c,0.0\n"
        "e,996147200.0\n"
        "f,0.0\n"
        "robot,996147200.0\n"
    )


def test_memory_peak_mode(tmp_path, capsys):
    path = write_instance(tmp_path, fixtures.dataset_pipeline(2.0))
    rc, out, _ = run(capsys, "memory", path, "--peak")
    assert rc == 0
    assert "e,838860800.0\n" in out
    assert out.endswith("robot,838860800.0\n")


# ---------------------------------------------------------------------------
# solve


def solve_json(capsys, *argv):
    rc, out, err = run(capsys, "solve", *argv)
    assert rc == 0, err
    return json.loads(out)


def test_solve_dataset_optimum(tmp_path, capsys):
    path = write_instance(tmp_path, fixtures.dataset_pipeline(2.0))
    payload = solve_json(capsys, path)
    assert payload["method"] == "bnb"
    assert payload["objective"] == "min_distance"
    assert payload["placement"] == {aid: "f" for aid in payload["placement"]}
    assert payload["memory_bytes"] == 524288000.0
    assert payload["time_seconds"] == 8.0
    assert payload["distance"] == math.hypot(500.0, 8.0)
    assert payload["explored_nodes"] > 0
    assert [p["seconds"] for p in payload["per_flow"]] == [8.0, 6.0]
    assert payload["per_flow"][0]["flow"] == ["data", "stage_a", "stage_c"]


def test_solve_objective_weights(tmp_path, capsys):
    path = write_instance(tmp_path, fixtures.dataset_pipeline(2.0))
    payload = solve_json(capsys, path, "--wm", "2.0", "--wt", "0.5")
    mem_mb = payload["memory_bytes"] / (1024 * 1024)
    assert payload["distance"] == math.hypot(2.0 * mem_mb, 0.5 * payload["time_seconds"])


def test_solve_memory_objective(tmp_path, capsys):
    path = write_instance(tmp_path, fixtures.dataset_pipeline(2.0))
    payload = solve_json(capsys, path, "--objective", "memory")
    assert payload["objective"] == "min_memory"
    assert payload["placement"] == {aid: "c" for aid in payload["placement"]}
    assert payload["memory_bytes"] == 524288000.0


def test_solve_oracle_agrees(tmp_path, capsys):
    path = write_instance(tmp_path, fixtures.dataset_pipeline(2.0))
    fast = solve_json(capsys, path)
    slow = solve_json(capsys, path, "--oracle")
    for key in ("placement", "memory_bytes", "time_seconds", "distance", "per_flow"):
        assert fast[key] == slow[key]


def test_solve_baseline_method(tmp_path, capsys):
    path = write_instance(tmp_path, fixtures.single_sort())
    payload = solve_json(capsys, path, "--method", "baseline")
    assert payload["objective"] == "end_time"
    assert payload["placement"] == {"sort": "c"}
    assert payload["time_seconds"] == 4.0
    assert payload["overall_with_return_seconds"] == 7.0


def test_solve_out_reruns_byte_identical(tmp_path, capsys):
    path = write_instance(tmp_path, fixtures.dataset_pipeline(2.0))
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["solve", path, "--out", str(first)]) == 0
    assert main(["solve", path, "--out", str(second)]) == 0
    capsys.readouterr()
    assert first.read_bytes() == second.read_bytes()
    rc, out, _ = run(capsys, "solve", path)
    assert out == first.read_text()


# ---------------------------------------------------------------------------
# pareto


def test_pareto_csv(tmp_path, capsys):
    path = write_instance(tmp_path, fixtures.single_sort())
    rc, out, _ = run(capsys, "pareto", path)
    assert rc == 0
    assert out == (
        "placement_lex_index,memory_mb,time_s,distance,on_front\n"
        f"0,0.0,7.0,7.0,0\n"
        f"1,0.0,{FOG_TIME!r},{FOG_TIME!r},0\n"
        f"2,0.0,5.0,5.0,1\n"
    )


def test_pareto_subsample_cap(tmp_path, capsys):
    path = write_instance(tmp_path, fixtures.dataset_pipeline(2.0))
    with pytest.warns(UserWarning, match="stratified"):
        rc = main(["pareto", path, "--max-points", "10"])
    out = capsys.readouterr().out
    assert rc == 0
    assert len(out.splitlines()) == 11  # header + 10 sampled placements


# ---------------------------------------------------------------------------
# simulate


def test_simulate_seeded_runs_are_byte_identical(tmp_path, capsys):
    path = write_instance(tmp_path, fixtures.dataset_pipeline(2.0, jitter_sigma=1.0))
    rc, first, _ = run(capsys, "simulate", path, "--trials", "6", "--seed", "3")
    assert rc == 0
    _, second, _ = run(capsys, "simulate", path, "--trials", "6", "--seed", "3")
    assert first == second
    _, pooled, _ = run(capsys, "simulate", path, "--trials", "6", "--seed", "3",
                       "--threads", "4")
    assert pooled == first
    payload = json.loads(first)
    assert payload["trials"] == 6 and payload["seed"] == 3
    assert set(payload) == {"trials", "seed", "win_rate", "ours", "baseline"}


def test_simulate_resolve_per_trial_flag(tmp_path, capsys):
    path = write_instance(tmp_path, fixtures.dataset_pipeline(2.0, jitter_sigma=1.0))
    rc, out, _ = run(capsys, "simulate", path, "--trials", "3", "--resolve-per-trial")
    assert rc == 0
    assert json.loads(out)["trials"] == 3


# ---------------------------------------------------------------------------
# bench


def test_bench_csv_shape(capsys):
    rc, out, _ = run(capsys, "bench", "--sizes", "3,5", "--reps", "1", "--seed", "0")
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "n,mean_seconds"
    assert lines[1].startswith("3,") and lines[2].startswith("5,")
    assert lines[3].startswith("# slope=") and " r2=" in lines[3]


def test_bench_rejects_bad_sizes(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bench", "--sizes", "3,x"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# examples / parser


def test_examples_writes_bundle(tmp_path, capsys):
    target = tmp_path / "fx"
    rc, out, _ = run(capsys, "examples", str(target))
    assert rc == 0
    written = sorted(target.glob("*.json"))
    assert len(written) == 9
    assert [str(p) for p in sorted(written)] == sorted(out.splitlines())
    names = {p.stem for p in written}
    assert {"single_sort", "dataset_d2", "vision_pipeline", "cyclic_invalid"} <= names
    # every bundled example except the cyclic demo must validate cleanly
    for p in written:
        expected = 1 if p.stem == "cyclic_invalid" else 0
        assert main(["validate", str(p)]) == expected
    capsys.readouterr()


def test_unknown_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["conquer"])
    assert exc.value.code == 2
