"""One search run, dissected.

Runs the self-organizing engine on the 20-dimensional Rastrigin function
with a small budget and prints the convergence trace together with the
state of the population topology at every snapshot.
"""

from sotea import EngineConfig, get, run
from sotea.netmetrics import graph_from_edges, topology_report

cfg = EngineConfig("sotea", pop_size=50, max_evals=50 * 600, seed=7,
                   k_max=7, snapshot_every=100)
problem = get("rastrigin")
record = run(cfg, problem)

print("problem=%s  config=%s  evals=%d  generations=%d" % (
    record.problem, record.config_label, record.evals, record.generations))
print()
print("gen    evals   best         median")
for gen, evals, best, median, _feasible in record.trace:
    if gen % 100 == 0:
        print("%4d  %6d   %-10.4g   %-10.4g" % (gen, evals, best, median))

print()
print("topology along the way:")
for gen, edges in record.snapshots:
    r = topology_report(graph_from_edges(cfg.pop_size, edges))
    print("  gen %4d: k_ave=%.2f  c_ave=%.3f (random baseline %.3f)  L=%.2f"
          % (gen, r.k_ave, r.c_ave, r.c_rand, r.path_length))

print()
print("best objective found: %.6g (feasible=%s)" % (record.best_objective,
                                                    record.best_feasible))
print("best genome:", " ".join("%.4f" % x for x in record.best_genome[:8]), "...")
