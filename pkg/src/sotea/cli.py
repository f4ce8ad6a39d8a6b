"""Command line front end.

Subcommands: problems (list the benchmark suite), sweep (emit the full
design-matrix plan), run (execute a plan into a result store), analyze
(profiles, pairwise class tests, aggregate statistics as CSV), topology
(the averaged topology measurement study), grow (reference network
generators plus their metrics).
"""

import argparse
import json
import os
import random
import sys

from . import analysis, netmetrics, problems
from .growth import ba_graph, component_subgraph, dd_graph, fitness_graph, largest_component
from .plan import ExperimentPlan, ResultStore, run_plan, sweep_plan


def _cmd_problems(args):
    reg = problems.registry()
    if args.json:
        print(json.dumps([p.as_json_dict() for p in reg], indent=1, sort_keys=True))
    else:
        for p in reg:
            print("%-16s dim=%-4d sense=%-3s constraints=%-2d best_known=%s"
                  % (p.name, p.dim, p.sense, p.n_constraints, p.best_known))
    return 0


def _cmd_sweep(args):
    plan = sweep_plan(problems=args.problems, runs_per_config=args.runs,
                      max_evals=args.max_evals, pop_size=args.pop_size,
                      seed_base=args.seed)
    if args.dry_run:
        print("plan %s: %d problems x %d configs x %d runs = %d cells"
              % (plan.name, len(plan.problems), len(plan.configs),
                 plan.runs_per_config, plan.n_cells()))
        return 0
    plan.save(args.out)
    print("wrote %s (%d cells)" % (args.out, plan.n_cells()))
    return 0


def _cmd_run(args):
    plan = ExperimentPlan.load(args.plan)
    if args.seed is not None:
        plan = ExperimentPlan(plan.name, plan.problems, plan.configs,
                              plan.runs_per_config, args.seed)
    summary = run_plan(plan, args.out_dir, jobs=args.jobs)
    print("executed=%(executed)d cached=%(cached)d errors=%(errors)d" % summary)
    return 1 if summary["errors"] else 0


def _cmd_analyze(args):
    store = ResultStore(args.store)
    out_dir = args.out_dir or os.path.join(args.store, "reports")
    os.makedirs(out_dir, exist_ok=True)
    analysis.write_csv(os.path.join(out_dir, "profiles.csv"),
                       ("problem", "config", "evals", "median_best", "n_runs"),
                       analysis.profiles_rows(store))
    analysis.write_csv(os.path.join(out_dir, "comparisons.csv"),
                       ("problem", "pair", "tuned_winner", "tuned_p",
                        "pooled_winner", "pooled_p", "tuned_sig99", "pooled_sig99"),
                       analysis.class_comparisons(store))
    analysis.write_csv(os.path.join(out_dir, "aggregate.csv"),
                       ("class", "pct_runs_found_best", "pct_runs_top5",
                        "u_test", "u_p", "pct_problems_best_design",
                        "pct_problems_found_best"),
                       analysis.aggregate_stats(store))
    print("wrote reports under %s" % out_dir)
    return 0


def _cmd_topology(args):
    problem = problems.get(args.problem)
    k_values = tuple(int(k) for k in args.k_max.split(","))
    study = netmetrics.sotea_topology_study(
        problem, pop_size=args.pop_size, k_max_values=k_values,
        runs=args.runs, generations=args.generations,
        snapshot_every=args.snapshot_every, seed=args.seed)
    os.makedirs(args.out_dir, exist_ok=True)
    path = os.path.join(args.out_dir, "topology_study.csv")
    analysis.write_csv(path, ("problem", "n", "k_max", "metric", "value"),
                       netmetrics.study_rows(study, args.pop_size, args.problem))
    overall = study["overall"]
    print("wrote %s" % path)
    print("overall: L=%.3f k_ave=%.3f c_ave=%.3f (c_rand=%.3f)"
          % (overall.path_length, overall.k_ave, overall.c_ave, overall.c_rand))
    return 0


def _cmd_grow(args):
    with open(args.config) as fh:
        spec = json.load(fh)
    rng = random.Random(args.seed)
    model = spec.get("model")
    if model == "ba":
        g = ba_graph(spec.get("n", 1000), m=spec.get("m", 2),
                     m0=spec.get("m0", 3), rng=rng)
    elif model == "dd":
        g = dd_graph(spec.get("n", 1000), delta=spec.get("delta", 0.53),
                     alpha_coeff=spec.get("alpha_coeff", 0.06),
                     seed_n=spec.get("seed_n", 5), rng=rng)
    elif model == "fitness":
        g, _ = fitness_graph(spec.get("n", 1000), dist=spec.get("dist", "exponential"),
                             x_max=spec.get("x_max", 10.0), rng=rng)
    else:
        print("growth config needs model: ba | dd | fitness", file=sys.stderr)
        return 2
    os.makedirs(args.out_dir, exist_ok=True)
    with open(os.path.join(args.out_dir, "%s_graph.dot" % model), "w") as fh:
        fh.write(g.to_dot())
    comp = largest_component(g)
    sub = component_subgraph(g, comp) if len(comp) < g.n else g
    report = netmetrics.topology_report(sub)
    rows = [(model, "n", g.n), (model, "largest_component", len(comp))]
    rows += [(model, k, v) for k, v in sorted(report.as_dict().items())]
    analysis.write_csv(os.path.join(args.out_dir, "%s_metrics.csv" % model),
                       ("model", "metric", "value"), rows)
    print("wrote %s_graph.dot and %s_metrics.csv under %s" % (model, model, args.out_dir))
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="sotea",
        description="Evolutionary search with a self-organizing population "
                    "topology, baselines, benchmarks, and analysis tools.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("problems", help="list the benchmark problems")
    p.add_argument("--json", action="store_true", help="dump full specs as JSON")
    p.set_defaults(func=_cmd_problems)

    p = sub.add_parser("sweep", help="emit the full design-matrix plan")
    p.add_argument("--out", default="plan.json")
    p.add_argument("--problems", nargs="*", default=None)
    p.add_argument("--runs", type=int, default=30)
    p.add_argument("--max-evals", type=int, default=150_000)
    p.add_argument("--pop-size", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dry-run", action="store_true")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("run", help="execute a plan into a result store")
    p.add_argument("plan")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=None, help="override seed_base")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("analyze", help="write profile/comparison/aggregate CSVs")
    p.add_argument("store")
    p.add_argument("--out-dir", default=None)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("topology", help="averaged topology measurement study")
    p.add_argument("--problem", default="rastrigin")
    p.add_argument("--pop-size", type=int, default=50)
    p.add_argument("--k-max", default="3,5,7,9")
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--generations", type=int, default=1000)
    p.add_argument("--snapshot-every", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=_cmd_topology)

    p = sub.add_parser("grow", help="run a reference network generator")
    p.add_argument("config", help="JSON file: {model: ba|dd|fitness, ...}")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_grow)
    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
