import json
import os

import pytest

from sotea.analysis import (
    aggregate_stats,
    class_comparisons,
    found_best_known,
    performance_profile,
    profiles_rows,
    write_csv,
)
from sotea.engines import EngineConfig
from sotea.plan import ExperimentPlan, ResultStore, cell_key, run_plan


def tiny_configs(max_evals=300, pop_size=10):
    return [
        EngineConfig("sotea", pop_size=pop_size, max_evals=max_evals, k_max=5),
        EngineConfig("cga", pop_size=pop_size, max_evals=max_evals, radius=2),
        EngineConfig("pea_ga", pop_size=pop_size, max_evals=max_evals, selection="tournament"),
    ]


def tiny_plan(problems=("sys_lin_eq",), runs=3, **kw):
    return ExperimentPlan.build("tiny", problems, tiny_configs(**kw), runs_per_config=runs)


def read(path):
    with open(path, "rb") as fh:
        return fh.read()


def tree_bytes(root):
    out = {}
    for dirpath, _, files in os.walk(root):
        for f in sorted(files):
            p = os.path.join(dirpath, f)
            out[os.path.relpath(p, root)] = read(p)
    return out


def test_plan_cell_arithmetic_and_seeds():
    plan = tiny_plan(runs=4)
    cells = plan.cells()
    assert len(cells) == plan.n_cells() == 1 * 3 * 4
    seeds = sorted({c[1]["seed"] for c in cells})
    assert seeds == [0, 1, 2, 3]


def test_plan_json_round_trip(tmp_path):
    plan = tiny_plan()
    path = tmp_path / "plan.json"
    plan.save(path)
    assert ExperimentPlan.load(path) == plan


def test_cell_key_sensitive_to_inputs():
    cfg = tiny_configs()[0].to_json_dict()
    base = cell_key("sys_lin_eq", cfg)
    assert cell_key("rastrigin", cfg) != base
    other = dict(cfg)
    other["seed"] = 5
    assert cell_key("sys_lin_eq", other) != base


def test_run_plan_executes_and_resumes(tmp_path):
    plan = tiny_plan(runs=3)
    out = tmp_path / "store"
    first = run_plan(plan, out)
    assert first == {"executed": 9, "cached": 0, "errors": 0}
    again = run_plan(plan, out)
    assert again == {"executed": 0, "cached": 9, "errors": 0}
    store = ResultStore(out)
    assert len(store.metas()) == 9


def test_same_seed_cells_identical_and_deterministic(tmp_path):
    plan = tiny_plan(runs=2)
    a = tmp_path / "a"
    b = tmp_path / "b"
    run_plan(plan, a)
    run_plan(plan, b)
    assert tree_bytes(a) == tree_bytes(b)  # byte-identical outputs


def test_invalid_config_gives_error_record(tmp_path):
    bad = {"family": "sotea", "pop_size": 10, "max_evals": 100}  # k_max missing
    plan = ExperimentPlan("broken", ("sys_lin_eq",),
                          (tiny_configs()[0].to_json_dict(), bad), 1, 0)
    summary = run_plan(plan, tmp_path / "store")
    assert summary["executed"] == 1
    assert summary["errors"] == 1
    store = ResultStore(tmp_path / "store")
    errors = store.metas(status="error")
    assert len(errors) == 1
    assert "k_max" in errors[0]["error"]


def test_store_rejects_missing_directory(tmp_path):
    with pytest.raises(ValueError):
        ResultStore(tmp_path / "nothing")


def test_trace_csv_schema(tmp_path):
    run_plan(tiny_plan(runs=1), tmp_path / "store")
    store = ResultStore(tmp_path / "store")
    meta = store.metas()[0]
    with open(os.path.join(meta["_dir"], "trace.csv")) as fh:
        header = fh.readline().strip()
    assert header == "generation,evals,best,feasible"
    rows = store.trace(meta)
    assert rows[0][0] == 0 and rows[0][1] == 0
    assert rows[-1][1] == meta["evals"]


def test_snapshot_dot_files_written(tmp_path):
    cfg = EngineConfig("sotea", pop_size=10, max_evals=600, k_max=5, snapshot_every=20)
    plan = ExperimentPlan.build("snap", ("rastrigin",), [cfg], runs_per_config=1)
    run_plan(plan, tmp_path / "store")
    store = ResultStore(tmp_path / "store")
    snap_dir = os.path.join(store.metas()[0]["_dir"], "snapshots")
    names = sorted(os.listdir(snap_dir))
    assert names == ["g000020.dot", "g000040.dot", "g000060.dot"]
    body = open(os.path.join(snap_dir, names[0])).read()
    assert body.startswith("graph {") and body.rstrip().endswith("}")


# --- analysis -------------------------------------------------------------------

@pytest.fixture(scope="module")
def toy_store(tmp_path_factory):
    root = tmp_path_factory.mktemp("toystore")
    plan = ExperimentPlan.build(
        "toy", ("sys_lin_eq", "gear_train"), tiny_configs(max_evals=400), runs_per_config=4)
    run_plan(plan, root)
    return ResultStore(root)


def test_profile_monotone_and_grid(toy_store):
    pts = performance_profile(toy_store, "sys_lin_eq", "sotea_k5", grid_step=100)
    assert [p.evals for p in pts] == [100, 200, 300, 400]
    meds = [p.median_best for p in pts]
    assert all(a >= b for a, b in zip(meds, meds[1:]))
    assert all(len(p.run_bests) == 4 for p in pts)


def test_profile_single_run_is_that_run(tmp_path):
    plan = ExperimentPlan.build("single", ("sys_lin_eq",), tiny_configs()[:1], runs_per_config=1)
    run_plan(plan, tmp_path / "s")
    store = ResultStore(tmp_path / "s")
    pts = performance_profile(store, "sys_lin_eq", "sotea_k5", grid_step=100)
    for p in pts:
        assert p.median_best == p.run_bests[0]


def test_profile_unknown_pair_rejected(toy_store):
    with pytest.raises(ValueError):
        performance_profile(toy_store, "sys_lin_eq", "nope")


def test_profiles_rows_cover_all_pairs(toy_store):
    rows = profiles_rows(toy_store, grid_step=200)
    pairs = {(r[0], r[1]) for r in rows}
    assert pairs == {(p, c) for p in ("sys_lin_eq", "gear_train")
                     for c in ("sotea_k5", "cga_r2", "ga_tour_7")}


def test_class_comparisons_shape(toy_store):
    rows = class_comparisons(toy_store)
    assert len(rows) == 2 * 3  # problems x pairs
    pairs = [r[1] for r in rows if r[0] == "gear_train"]
    assert pairs == ["pea_vs_sotea", "cga_vs_sotea", "pea_vs_cga"]
    for r in rows:
        assert r[2] == "insig" or r[2] in ("pea", "cga", "sotea")


def test_class_comparisons_missing_class_flagged(tmp_path):
    plan = ExperimentPlan.build("partial", ("sys_lin_eq",), tiny_configs()[:2], 2)
    run_plan(plan, tmp_path / "s")
    rows = class_comparisons(ResultStore(tmp_path / "s"))
    assert [r[2] for r in rows] == ["missing", "insig", "missing"] or \
        [r[2] for r in rows].count("missing") == 2


def test_aggregate_stats_shape_and_ranges(toy_store):
    rows = aggregate_stats(toy_store)
    assert [r[0] for r in rows] == ["pea", "cga", "sotea"]
    for row in rows:
        assert 0.0 <= row[1] <= 100.0
        assert 0.0 <= row[2] <= 100.0
        assert row[3] in ("passed", "failed")
        assert 0.0 <= row[5] <= 100.0
        assert 0.0 <= row[6] <= 100.0
    # best-design percentages cover each problem exactly once
    assert sum(r[5] for r in rows) == pytest.approx(100.0)


def test_found_best_known_tolerance():
    assert found_best_known(2.7008e-12, True, 2.70e-12)
    assert found_best_known(1e-7, True, 0.0)
    assert not found_best_known(1e-7, False, 0.0)
    # tolerance is max(1e-6, 1e-4 |best|) = 0.585 here
    assert found_best_known(5850.8, True, 5850.37)
    assert not found_best_known(5851.0, True, 5850.37)
    assert not found_best_known(None, True, 1.0)


def test_synthetic_dominance_detected(tmp_path):
    # hand-built store: one class strictly dominates
    root = tmp_path / "fake"
    cells = root / "cells"
    os.makedirs(cells)
    mk = 0
    for family, label, values in [
        ("sotea", "sotea_k5", [1.0, 1.1, 1.2, 1.3, 1.4, 1.05, 1.15, 1.25]),
        ("cga", "cga_r2", [2.0, 2.1, 2.2, 2.3, 2.4, 2.05, 2.15, 2.25]),
        ("pea_ga", "ga_tour_7", [3.0, 3.1, 3.2, 3.3, 3.4, 3.05, 3.15, 3.25]),
    ]:
        for i, v in enumerate(values):
            d = cells / ("sys_lin_eq__%s__s%d__x%d" % (label, i, mk))
            os.makedirs(d)
            mk += 1
            meta = {
                "schema_version": 1, "status": "done", "problem": "sys_lin_eq",
                "config": {"family": family}, "config_label": label, "seed": i,
                "evals": 100, "generations": 10, "best_objective": v,
                "best_feasible": True, "best_genome": [], "final_objectives": [v],
                "final_phis": [0.0], "notes": [],
            }
            with open(d / "meta.json", "w") as fh:
                json.dump(meta, fh)
    plan = ExperimentPlan("fake", ("sys_lin_eq",), (), 1, 0)
    plan.save(root / "plan.json")
    store = ResultStore(root)
    rows = class_comparisons(store)
    by_pair = {r[1]: r for r in rows}
    assert by_pair["pea_vs_sotea"][4] == "sotea"
    assert by_pair["cga_vs_sotea"][4] == "sotea"
    assert by_pair["pea_vs_cga"][4] == "cga"
    agg = {r[0]: r for r in aggregate_stats(store)}
    assert agg["sotea"][3] == "passed"
    assert agg["pea"][3] == "failed"
    assert agg["sotea"][5] == pytest.approx(100.0)


def test_aggregate_single_class_store(tmp_path):
    plan = ExperimentPlan.build("solo", ("gear_train",), tiny_configs()[:1], 2)
    run_plan(plan, tmp_path / "s")
    rows = aggregate_stats(ResultStore(tmp_path / "s"))
    by_class = {r[0]: r for r in rows}
    # the only class present owns the best design on 100% of problems
    assert by_class["sotea"][5] == pytest.approx(100.0)
    assert by_class["pea"][5] == 0.0
    assert by_class["cga"][1] == 0.0


def test_write_csv_deterministic(tmp_path):
    rows = [("a", 1.5, 2), ("b", float("nan"), 3)]
    p1 = tmp_path / "x.csv"
    p2 = tmp_path / "y.csv"
    write_csv(p1, ("name", "v", "n"), rows)
    write_csv(p2, ("name", "v", "n"), rows)
    assert read(p1) == read(p2)
    text = open(p1).read()
    assert text.splitlines()[0] == "name,v,n"
    assert "1.5" in text
