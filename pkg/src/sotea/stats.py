"""Mann-Whitney U test, one-sided, with an exact small-sample path.

The U statistic for sample a counts pairs where a's value exceeds b's
(ties count half), computed from midrank sums. The one-sided p-value is
P(U <= u_obs) under the null, i.e. small p means a's values sit below b's.

For pooled sizes up to EXACT_LIMIT the p-value is exact: every assignment
of the pooled values to the two groups is enumerated. Larger samples use
the normal approximation with tie-corrected variance and a 0.5 continuity
correction. Two identical samples (or an all-constant pool) short-circuit
to the no-evidence marker p = 0.5.
"""

import itertools
import math

__all__ = ["mann_whitney_u", "midranks", "EXACT_LIMIT"]

EXACT_LIMIT = 12


def midranks(values):
    """Ranks 1..n with ties sharing their average rank."""
    order = sorted(range(len(values)), key=values.__getitem__)
    ranks = [0.0] * len(values)
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        r = (i + j) / 2.0 + 1.0
        for k in range(i, j + 1):
            ranks[order[k]] = r
        i = j + 1
    return ranks


def _u_from_ranks(ranks, n1):
    return sum(ranks[:n1]) - n1 * (n1 + 1) / 2.0


def _u_stat(a, b):
    return _u_from_ranks(midranks(list(a) + list(b)), len(a))


def _p_exact(pool, n1, u_obs):
    idx = range(len(pool))
    hits = 0
    total = 0
    for chosen in itertools.combinations(idx, n1):
        chosen_set = set(chosen)
        sample = [pool[i] for i in chosen]
        rest = [pool[i] for i in idx if i not in chosen_set]
        if _u_stat(sample, rest) <= u_obs + 1e-9:
            hits += 1
        total += 1
    return hits / total


def normal_p(u, n1, n2, pooled_ranks):
    """Normal-approximation P(U <= u) with tie correction and continuity
    correction. Returns 0.5 when the variance degenerates (all ties)."""
    n = n1 + n2
    mu = n1 * n2 / 2.0
    counts = {}
    for r in pooled_ranks:
        counts[r] = counts.get(r, 0) + 1
    tie_term = sum(c ** 3 - c for c in counts.values())
    var = n1 * n2 / 12.0 * ((n + 1) - tie_term / (n * (n - 1)))
    if var <= 0.0:
        return 0.5
    z = (u + 0.5 - mu) / math.sqrt(var)
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def mann_whitney_u(a, b):
    """One-sided Mann-Whitney test of whether a's values lie below b's.

    Returns (U_a, p). Exact enumeration when len(a)+len(b) <= EXACT_LIMIT,
    normal approximation otherwise; p = 0.5 marks no evidence (identical
    samples or a constant pool).
    """
    a = list(a)
    b = list(b)
    if not a or not b:
        raise ValueError("both samples must be non-empty")
    pool = a + b
    ranks = midranks(pool)
    u = _u_from_ranks(ranks, len(a))
    if len(set(pool)) == 1 or sorted(a) == sorted(b):
        return u, 0.5
    if len(pool) <= EXACT_LIMIT:
        return u, _p_exact(pool, len(a), u)
    return u, normal_p(u, len(a), len(b), ranks)
