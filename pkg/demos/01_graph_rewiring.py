"""Watch a population graph organize itself.

Starts from the ring every engine starts from, assigns a fitness ranking,
and applies the three rewiring rules generation after generation. High
ranked nodes grow toward their larger degree set points while the transfer
rule folds the rest of the population into tight clusters.
"""

import random

from sotea.graph import PopulationGraph
from sotea.netmetrics import topology_report
from sotea.rewiring import SetPointPolicy, apply_topology_step, degree_set_point

N = 50
policy = SetPointPolicy(k_max=9)
rng = random.Random(1)

g = PopulationGraph.ring(N)
ranks = list(range(1, N + 1))
rng.shuffle(ranks)

print("degree set points: rank 1 -> %.3f, rank %d -> %.3f" % (
    degree_set_point(policy, 1, N), N, degree_set_point(policy, N, N)))
print()
print("gen   edges  k_ave  c_ave  c_rand  path_len")
for gen in range(1, 201):
    # a little rank churn stands in for the fitness dynamics of a real run
    if gen % 10 == 0:
        i, j = rng.randrange(N), rng.randrange(N)
        ranks[i], ranks[j] = ranks[j], ranks[i]
    for n1 in range(N):
        apply_topology_step(g, ranks, policy, n1, rng)
    if gen % 25 == 0 or gen == 1:
        r = topology_report(g)
        print("%3d   %5d  %5.2f  %5.3f  %6.3f  %8.3f"
              % (gen, g.num_edges(), r.k_ave, r.c_ave, r.c_rand, r.path_length))

assert g.is_connected()
print()
print("still connected after %d rewiring steps" % (200 * N))
print()
print("DOT snapshot of the final topology (paste into graphviz):")
print(g.to_dot())
