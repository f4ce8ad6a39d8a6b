"""Desk-scale engine shootout.

Runs a small plan (three engine designs, one problem, a handful of seeds)
through the experiment harness, then prints the performance profile and
the pairwise significance tests exactly as the analyze command would
compute them.
"""

import tempfile

from sotea.analysis import aggregate_stats, class_comparisons, performance_profile
from sotea.engines import EngineConfig
from sotea.plan import ExperimentPlan, ResultStore, run_plan

BUDGET = 20_000
configs = [
    EngineConfig("sotea", pop_size=50, max_evals=BUDGET, k_max=7),
    EngineConfig("cga", pop_size=50, max_evals=BUDGET, radius=2),
    EngineConfig("pea_ga", pop_size=50, max_evals=BUDGET, selection="linear_ranking"),
]
plan = ExperimentPlan.build("demo", ("rastrigin",), configs, runs_per_config=5)

with tempfile.TemporaryDirectory() as store_dir:
    summary = run_plan(plan, store_dir, jobs=2)
    print("ran %(executed)d cells (%(cached)d cached, %(errors)d errors)" % summary)
    store = ResultStore(store_dir)

    print()
    print("median best-so-far every 5000 evaluations:")
    print("%-8s" % "evals", *("%-12s" % c.label() for c in configs))
    series = {c.label(): performance_profile(store, "rastrigin", c.label(), grid_step=5000)
              for c in configs}
    for i, evals in enumerate(range(5000, BUDGET + 1, 5000)):
        print("%-8d" % evals, *("%-12.4g" % series[c.label()][i].median_best for c in configs))

    print()
    print("pairwise class tests (winner, one-sided p):")
    for row in class_comparisons(store):
        print("  %s %s: tuned -> %s (p=%.4g), pooled -> %s (p=%.4g)"
              % (row[0], row[1], row[2], row[3], row[4], row[5]))

    print()
    print("aggregate class statistics:")
    print("%-7s %-10s %-10s %-8s %-10s %-10s" % ("class", "found[%]", "top5[%]",
                                                 "u_test", "best_dsgn[%]", "found_once[%]"))
    for cls, found, top5, u, _p, best_design, found_once in aggregate_stats(store):
        print("%-7s %-10.1f %-10.1f %-8s %-10.1f %-10.1f"
              % (cls, found, top5, u, best_design, found_once))
