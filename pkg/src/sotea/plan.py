"""Experiment plans and the on-disk result store.

A plan is (problems x engine configs x run indices); the seed of run r is
seed_base + r, so runs pair up across configs. Each cell lands in its own
directory keyed by a content hash of its exact inputs, which makes plans
resumable: re-running skips every cell whose results already exist.

Store layout (all files deterministic byte-for-byte for a given plan):

    <root>/plan.json
    <root>/cells/<problem>__<label>__s<seed>__<hash>/
        meta.json            summary (schema_version, config, best, finals)
        trace.csv            generation,evals,best,feasible
        snapshots/g<gen>.dot population graph snapshots (graph engines)

Cells that fail (e.g. an invalid config) get an error meta.json and the
plan carries on; error cells are retried on resume.
"""

import hashlib
import json
import multiprocessing
import os
from dataclasses import dataclass

from . import problems as problem_suite
from .engines import EngineConfig, design_matrix, run

__all__ = ["SCHEMA_VERSION", "ExperimentPlan", "sweep_plan", "run_plan",
           "ResultStore", "cell_key"]

SCHEMA_VERSION = 1


def _dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def cell_key(problem_name, config_dict):
    """Short content hash identifying one run cell."""
    payload = _dumps({"problem": problem_name, "config": config_dict,
                      "schema_version": SCHEMA_VERSION})
    return hashlib.sha256(payload.encode()).hexdigest()[:12]


def _config_label(config_dict):
    try:
        return EngineConfig.from_json_dict(config_dict).label()
    except (ValueError, TypeError, KeyError):
        return "invalid"


@dataclass(frozen=True)
class ExperimentPlan:
    """Problems x configs x runs, with deterministic per-run seeds."""

    name: str
    problems: tuple
    configs: tuple  # config dicts, json-level
    runs_per_config: int = 30
    seed_base: int = 0

    def __post_init__(self):
        if self.runs_per_config < 1:
            raise ValueError("runs_per_config must be >= 1")

    @classmethod
    def build(cls, name, problems, configs, runs_per_config=30, seed_base=0):
        """Construct from EngineConfig objects."""
        return cls(name, tuple(problems),
                   tuple(c.to_json_dict() for c in configs),
                   runs_per_config, seed_base)

    def cells(self):
        """(problem, config_dict_with_seed, label, key) for every cell."""
        out = []
        for problem in self.problems:
            for config in self.configs:
                label = _config_label(config)
                for r in range(self.runs_per_config):
                    cd = dict(config)
                    cd["seed"] = self.seed_base + r
                    out.append((problem, cd, label, cell_key(problem, cd)))
        return out

    def n_cells(self):
        return len(self.problems) * len(self.configs) * self.runs_per_config

    def to_json_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "name": self.name,
            "problems": list(self.problems),
            "configs": [dict(c) for c in self.configs],
            "runs_per_config": self.runs_per_config,
            "seed_base": self.seed_base,
        }

    @classmethod
    def from_json_dict(cls, d):
        return cls(d["name"], tuple(d["problems"]),
                   tuple(d["configs"]), d.get("runs_per_config", 30),
                   d.get("seed_base", 0))

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh, sort_keys=True, indent=1)
            fh.write("\n")

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))


def sweep_plan(problems=None, runs_per_config=30, max_evals=150_000,
               pop_size=50, seed_base=0, name="full_sweep"):
    """The full comparison plan: every problem crossed with the whole
    design matrix."""
    if problems is None:
        problems = list(problem_suite.PROBLEM_NAMES)
    configs = design_matrix(pop_size=pop_size, max_evals=max_evals)
    return ExperimentPlan.build(name, problems, configs, runs_per_config, seed_base)


def _cell_dir(root, problem, label, seed, key):
    return os.path.join(root, "cells", "%s__%s__s%d__%s" % (problem, label, seed, key))


def _float_str(x):
    return repr(float(x))


def _write_record(cell_dir, config_dict, record):
    os.makedirs(cell_dir, exist_ok=True)
    lines = ["generation,evals,best,feasible"]
    for gen, evals, best, _median, feasible in record.trace:
        lines.append("%d,%d,%s,%d" % (gen, evals, _float_str(best), int(feasible)))
    with open(os.path.join(cell_dir, "trace.csv"), "w") as fh:
        fh.write("\n".join(lines) + "\n")
    if record.snapshots:
        snap_dir = os.path.join(cell_dir, "snapshots")
        os.makedirs(snap_dir, exist_ok=True)
        for gen, edges in record.snapshots:
            body = ["graph {"] + ["  %d -- %d;" % e for e in edges] + ["}"]
            with open(os.path.join(snap_dir, "g%06d.dot" % gen), "w") as fh:
                fh.write("\n".join(body) + "\n")
    meta = {
        "schema_version": SCHEMA_VERSION,
        "status": "done",
        "problem": record.problem,
        "config": config_dict,
        "config_label": record.config_label,
        "seed": record.seed,
        "evals": record.evals,
        "generations": record.generations,
        "best_objective": record.best_objective,
        "best_feasible": record.best_feasible,
        "best_genome": list(record.best_genome),
        "final_objectives": list(record.final_objectives),
        "final_phis": list(record.final_phis),
        "median_trace": [[row[0], row[1], row[3]] for row in record.trace],
        "notes": list(record.notes),
    }
    _write_meta(cell_dir, meta)


def _write_meta(cell_dir, meta):
    os.makedirs(cell_dir, exist_ok=True)
    with open(os.path.join(cell_dir, "meta.json"), "w") as fh:
        json.dump(meta, fh, sort_keys=True, indent=1)
        fh.write("\n")


def _execute_cell(args):
    root, problem_name, config_dict, label, key = args
    cell_dir = _cell_dir(root, problem_name, label, config_dict.get("seed", 0), key)
    try:
        config = EngineConfig.from_json_dict(config_dict)
        problem = problem_suite.get(problem_name)
        record = run(config, problem)
        _write_record(cell_dir, config_dict, record)
        return "done"
    except Exception as exc:  # error cells must not kill the plan
        _write_meta(cell_dir, {
            "schema_version": SCHEMA_VERSION,
            "status": "error",
            "problem": problem_name,
            "config": config_dict,
            "config_label": label,
            "seed": config_dict.get("seed", 0),
            "error": "%s: %s" % (type(exc).__name__, exc),
        })
        return "error"


def run_plan(plan, out_dir, jobs=1):
    """Execute every pending cell of the plan under out_dir.

    Returns {"executed": n, "cached": n, "errors": n}. Cells whose
    meta.json already reports status done are skipped, so a finished plan
    re-runs as a no-op.
    """
    os.makedirs(out_dir, exist_ok=True)
    plan.save(os.path.join(out_dir, "plan.json"))
    pending = []
    cached = 0
    for problem, config_dict, label, key in plan.cells():
        cell_dir = _cell_dir(out_dir, problem, label, config_dict["seed"], key)
        meta_path = os.path.join(cell_dir, "meta.json")
        if os.path.exists(meta_path):
            with open(meta_path) as fh:
                if json.load(fh).get("status") == "done":
                    cached += 1
                    continue
        pending.append((out_dir, problem, config_dict, label, key))
    if jobs > 1 and len(pending) > 1:
        with multiprocessing.Pool(jobs) as pool:
            statuses = pool.map(_execute_cell, pending)
    else:
        statuses = [_execute_cell(args) for args in pending]
    errors = sum(1 for s in statuses if s == "error")
    return {"executed": len(statuses) - errors, "cached": cached, "errors": errors}


class ResultStore:
    """Read-only view over a plan's output directory. Cell summaries are
    cached on first read; treat the returned dicts as immutable."""

    def __init__(self, root):
        self.root = root
        if not os.path.isdir(os.path.join(root, "cells")):
            raise ValueError("no cells/ directory under %r" % (root,))
        self._all_metas = None

    def plan(self):
        return ExperimentPlan.load(os.path.join(self.root, "plan.json"))

    def cell_dirs(self):
        base = os.path.join(self.root, "cells")
        return [os.path.join(base, d) for d in sorted(os.listdir(base))]

    def metas(self, status="done"):
        if self._all_metas is None:
            loaded = []
            for cell_dir in self.cell_dirs():
                path = os.path.join(cell_dir, "meta.json")
                if not os.path.exists(path):
                    continue
                with open(path) as fh:
                    meta = json.load(fh)
                meta["_dir"] = cell_dir
                loaded.append(meta)
            self._all_metas = loaded
        if status is None:
            return list(self._all_metas)
        return [m for m in self._all_metas if m.get("status") == status]

    @staticmethod
    def trace(meta):
        """Trace rows [(generation, evals, best, feasible)] for a cell."""
        rows = []
        with open(os.path.join(meta["_dir"], "trace.csv")) as fh:
            next(fh)
            for line in fh:
                gen, evals, best, feasible = line.rstrip("\n").split(",")
                rows.append((int(gen), int(evals), float(best), feasible == "1"))
        return rows
