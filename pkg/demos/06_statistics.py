"""The nonparametric machinery behind the comparison tables.

Shows the Mann-Whitney test on hand-sized samples (where the p-value is an
exact enumeration), on larger samples (normal approximation), and the
stochastic-ranking comparator that orders constrained populations.
"""

import random

from sotea.selection import FitnessComparator, stochastic_rank_sort
from sotea.stats import mann_whitney_u

print("exact small-sample test: a=[1,2] vs b=[3,4]")
u, p = mann_whitney_u([1, 2], [3, 4])
print("  U=%g  one-sided p=%.4f (=1/6 by enumeration of all C(4,2) splits)" % (u, p))

rng = random.Random(0)
a = [rng.gauss(0.0, 1.0) for _ in range(30)]
b = [rng.gauss(0.8, 1.0) for _ in range(30)]
u, p = mann_whitney_u(a, b)
print()
print("normal-approximation test on 30 vs 30 shifted gaussians:")
print("  U=%.1f  one-sided p=%.2g" % (u, p))

u, p = mann_whitney_u(a, a)
print("identical samples give the no-evidence marker: p=%.2f" % p)

print()
print("stochastic ranking with p_f=0.45 on a mixed population")
print("(objective, violation):")
pop = [(0.5, 0.0), (0.1, 2.0), (0.9, 0.0), (0.2, 0.1), (0.05, 5.0)]
keys = [o for o, _ in pop]
phis = [v for _, v in pop]
for trial in range(3):
    order = stochastic_rank_sort(keys, phis, 0.45, random.Random(trial))
    print("  seed %d order (best first): %s" % (trial, order))
print("feasible individuals gravitate to the front, but a good objective")
print("sometimes beats a small violation, which is the point of p_f")

cmp = FitnessComparator(p_f=0.45)
wins = sum(cmp.better(0.05, 5.0, 0.5, 0.0, random.Random(s)) for s in range(10000))
print()
print("head-to-head: infeasible-but-better wins %.1f%% of comparisons "
      "(p_f = 45%%)" % (100 * wins / 10000))
