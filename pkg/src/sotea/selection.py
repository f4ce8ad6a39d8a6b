"""Fitness comparison under constraints, rank assignment, and selection.

Constrained problems are ordered by stochastic ranking: a bubble pass
compares adjacent individuals by objective when both are feasible or, with
probability p_f, regardless of feasibility; otherwise by total constraint
violation. p_f < 0.5 keeps the pressure toward feasible regions. With
p_f = 0 the result coincides with a deterministic feasible-first sort.
Unconstrained problems bypass all of this and sort by objective alone.

Objectives are compared through a signed key (negated for maximization),
so every engine minimizes internally while records keep raw values.
"""

from dataclasses import dataclass

__all__ = [
    "FitnessComparator",
    "stochastic_rank_sort",
    "select",
    "SELECTION_SCHEMES",
    "P_F_DEFAULT",
]

# Suggested master probability for comparing infeasible pairs by objective.
P_F_DEFAULT = 0.45

SELECTION_SCHEMES = (
    "binary_tournament_no_replacement",
    "truncation",
    "linear_ranking",
    "uniform_random",
)


def stochastic_rank_sort(keys, phis, p_f, rng):
    """Order indices best-first by stochastic ranking.

    Runs up to n bubble sweeps over adjacent pairs, stopping early when a
    sweep makes no swap. Ties never swap, so the initial (index) order
    breaks them deterministically.
    """
    n = len(keys)
    idx = list(range(n))
    rand = rng.random
    for _ in range(n):
        swapped = False
        for j in range(n - 1):
            a = idx[j]
            b = idx[j + 1]
            if (phis[a] == 0.0 and phis[b] == 0.0) or rand() < p_f:
                if keys[a] > keys[b]:
                    idx[j] = b
                    idx[j + 1] = a
                    swapped = True
            elif phis[a] > phis[b]:
                idx[j] = b
                idx[j + 1] = a
                swapped = True
        if not swapped:
            break
    return idx


@dataclass(frozen=True)
class FitnessComparator:
    """Pairwise comparison and population ordering.

    p_f=None selects the unconstrained mode (pure objective order);
    otherwise single comparisons and sorts follow the stochastic-ranking
    rule with that p_f.
    """

    maximize: bool = False
    p_f: float = None

    def __post_init__(self):
        if self.p_f is not None and not 0.0 <= self.p_f < 0.5:
            raise ValueError("p_f must lie in [0, 0.5), got %r" % (self.p_f,))

    def key(self, objective):
        return -objective if self.maximize else objective

    def better(self, obj_a, phi_a, obj_b, phi_b, rng):
        """True iff a is strictly better than b under one comparison."""
        if self.p_f is None or (phi_a == 0.0 and phi_b == 0.0) or rng.random() < self.p_f:
            return self.key(obj_a) < self.key(obj_b)
        return phi_a < phi_b

    def sort(self, objectives, phis, rng):
        """Best-first index order; ties keep the lower index first."""
        keys = [self.key(o) for o in objectives]
        if self.p_f is None:
            return sorted(range(len(keys)), key=keys.__getitem__)
        return stochastic_rank_sort(keys, phis, self.p_f, rng)

    def ranks(self, objectives, phis, rng):
        """Per-index rank 1..n (1 = best) under this comparator's order."""
        order = self.sort(objectives, phis, rng)
        rank = [0] * len(order)
        for pos, i in enumerate(order):
            rank[i] = pos + 1
        return rank


def select(scheme, pool, rank_of, count, rng):
    """Draw `count` members from `pool` under the named scheme.

    rank_of maps a pool member to its rank position (lower is better).
    Tournaments draw two distinct contestants per pick and keep the
    winner in the pool; truncation takes the best `count`; linear ranking
    weights the best of m members m, the next m-1, down to 1.
    """
    m = len(pool)
    if m == 0:
        raise ValueError("cannot select from an empty pool")
    if scheme == "truncation":
        if count > m:
            raise ValueError("truncation needs count <= pool size")
        return sorted(pool, key=lambda i: rank_of[i])[:count]
    if scheme == "binary_tournament_no_replacement":
        if m == 1:
            return [pool[0]] * count
        out = []
        for _ in range(count):
            a, b = rng.sample(pool, 2)
            out.append(a if rank_of[a] < rank_of[b] else b)
        return out
    if scheme == "linear_ranking":
        ordered = sorted(pool, key=lambda i: rank_of[i])
        total = m * (m + 1) / 2.0
        out = []
        for _ in range(count):
            u = rng.random() * total
            acc = 0.0
            chosen = ordered[-1]
            for pos, member in enumerate(ordered):
                acc += m - pos
                if u < acc:
                    chosen = member
                    break
            out.append(chosen)
        return out
    if scheme == "uniform_random":
        return [pool[rng.randrange(m)] for _ in range(count)]
    raise ValueError("unknown selection scheme %r" % (scheme,))
