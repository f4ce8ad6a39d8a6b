"""Rank-driven rewiring of a population graph.

Two driving forces shape the topology. Each node carries a target degree
that grows quadratically with its fitness rank, so only the very best
individuals are pulled toward hub positions:

    K_set(rank) = k_min + (k_max - k_min) * ((n - rank) / n)^2

and local rewiring tries to raise a rank-weighted clustering coefficient

    c*_i = 2 e*_i / (k_i (k_i - 1)),   e*_i = sum over connected neighbor
    pairs {j, k} of (rank_j * rank_k) / n^2

which discounts triangles that involve well-ranked nodes, steering
modularity toward the low-fitness part of the population.

Three operators move the graph toward these targets, each seeded by a
two-step random walk n1 -> n2 -> n3 and each given a fixed budget of fresh
walk attempts: add a link n1--n3 when both ends can take another link
without overshooting their set points, remove an existing n1--n3 link when
both ends carry excess (the shared neighbor n2 guarantees the graph cannot
fragment), and transfer n1's link from n2 to n3 when n3 sits below its set
point and the move strictly increases c* summed over the three nodes.

A node accepts a new link only while k + 1 <= K_set; comparing k < K_set
instead would leave every node with a fractional set point oscillating
(add one generation, remove the next), and the resulting link churn
destroys the clustered structure the transfer rule builds up.

Ranks are 1 (best) .. n (worst). Degree comparisons use the real-valued
set point directly; nothing is rounded.
"""

from dataclasses import dataclass

__all__ = [
    "K_MIN",
    "SetPointPolicy",
    "degree_set_point",
    "clustering_weight",
    "weighted_clustering",
    "add_link_rule",
    "remove_link_rule",
    "transfer_link_rule",
    "apply_topology_step",
    "TopologyStep",
    "RULE_ATTEMPTS",
]

K_MIN = 3

# Fresh stochastic walks allowed per rule application on one node.
RULE_ATTEMPTS = 10


@dataclass(frozen=True)
class SetPointPolicy:
    """Degree set-point bounds; k_max is the model's tuning parameter."""

    k_max: int
    k_min: int = K_MIN

    def __post_init__(self):
        if self.k_min > self.k_max:
            raise ValueError("k_min %r exceeds k_max %r" % (self.k_min, self.k_max))

    def set_point(self, rank, n):
        return degree_set_point(self, rank, n)


def degree_set_point(policy, rank, n):
    """Desired degree for a node of the given rank in a population of n.

    Real-valued, monotone non-increasing in rank, bounded in
    [k_min, k_max]; rank n collapses to the lower bound.
    """
    if not 1 <= rank <= n:
        raise ValueError("rank %r outside 1..%d" % (rank, n))
    frac = (n - rank) / n
    return policy.k_min + (policy.k_max - policy.k_min) * frac * frac


def clustering_weight(rank_j, rank_k, n):
    """Weight of a closing edge between nodes ranked rank_j and rank_k.

    (rank_j * rank_k) / n^2, in (0, 1]; worst-ranked pairs weigh 1.
    """
    if not (1 <= rank_j <= n and 1 <= rank_k <= n):
        raise ValueError("ranks must lie in 1..%d" % n)
    return (rank_j * rank_k) / (n * n)


def _weighted_terms(g, ranks, i):
    """(numerator, denominator) of c*_i up to the common 2/n^2 factor.

    The numerator is the integer sum of rank_j * rank_k over connected
    neighbor pairs, the denominator k_i (k_i - 1); both exact, so transfer
    decisions can compare c* sums without floating-point noise.
    """
    adj = g._adj
    nbrs = adj[i]
    k = len(nbrs)
    if k < 2:
        return 0, 1
    lst = tuple(nbrs)
    e = 0
    for a in range(k - 1):
        na = lst[a]
        adj_a = adj[na]
        ra = ranks[na]
        for b in range(a + 1, k):
            nb = lst[b]
            if nb in adj_a:
                e += ra * ranks[nb]
    return e, k * (k - 1)


def weighted_clustering(g, ranks, i):
    """Rank-weighted clustering coefficient c*_i.

    Each connected neighbor pair {j, k} of node i contributes
    rank_j * rank_k / n^2 instead of 1. Nodes of degree < 2 get 0 since
    they cannot close a triangle. Always <= the unweighted coefficient.
    """
    e, d = _weighted_terms(g, ranks, i)
    return 2.0 * e / (g.n * g.n) / d


def _triple_increased(before, after):
    """Exact comparison of two three-node c* sums given as
    (numerator, denominator) pairs: true iff the sum strictly increased."""
    db = before[0][1] * before[1][1] * before[2][1]
    da = after[0][1] * after[1][1] * after[2][1]
    lhs = sum(e * (da // d) for e, d in after) * db
    rhs = sum(e * (db // d) for e, d in before) * da
    return lhs > rhs


def add_link_rule(g, ranks, policy, n1, rng, attempts=RULE_ATTEMPTS):
    """Try to add a link from n1 to the endpoint of a two-step walk.

    Fires when both n1 and the walk endpoint have headroom for one more
    link (k + 1 <= K_set) and the endpoint is neither n1 nor already
    adjacent to it. Returns True if a link was added within the attempt
    budget.
    """
    n = g.n
    adj = g._adj
    if len(adj[n1]) + 1 > policy.set_point(ranks[n1], n):
        return False
    for _ in range(attempts):
        _, end = g.two_step_walk(n1, rng)
        if end == n1 or end in adj[n1]:
            continue
        if len(adj[end]) + 1 <= policy.set_point(ranks[end], n):
            g.add_edge(n1, end)
            return True
    return False


def remove_link_rule(g, ranks, policy, n1, rng, attempts=RULE_ATTEMPTS):
    """Try to remove a link n1--n3 closed by a two-step walk.

    Fires when the walk ends at an existing neighbor of n1 and both ends
    exceed their set points. The walk midpoint is adjacent to both ends,
    so removal cannot disconnect the graph; since set points are >= k_min,
    both endpoint degrees stay >= k_min afterwards.
    """
    n = g.n
    adj = g._adj
    if len(adj[n1]) <= policy.set_point(ranks[n1], n):
        return False
    for _ in range(attempts):
        _, end = g.two_step_walk(n1, rng)
        if end == n1 or end not in adj[n1]:
            continue
        if len(adj[end]) > policy.set_point(ranks[end], n):
            g.remove_edge(n1, end)
            return True
    return False


def transfer_link_rule(g, ranks, policy, n1, rng, attempts=RULE_ATTEMPTS):
    """Try to move one of n1's links toward a walk endpoint.

    A walk n1 -> n2 -> n3 proposes replacing edge (n1, n2) with (n1, n3),
    allowed when n3 wants more degree, is not n1, and is not already a
    neighbor. The move is kept only if c*_{n1} + c*_{n2} + c*_{n3}
    strictly increases; ties revert, and the revert restores the graph
    exactly. Connectivity is safe because n2--n3 and the new n1--n3 edge
    both exist after the move. Attempts that would drop n2 to degree 1
    are rejected so the population's degree floor never falls below 2.
    """
    applied, _, _ = _transfer(g, ranks, policy, n1, rng, attempts)
    return applied


def _transfer(g, ranks, policy, n1, rng, attempts):
    n = g.n
    adj = g._adj
    for _ in range(attempts):
        mid, end = g.two_step_walk(n1, rng)
        if end == n1 or end in adj[n1]:
            continue
        if len(adj[end]) >= policy.set_point(ranks[end], n):
            continue
        if len(adj[mid]) <= 2:
            continue
        before = (
            _weighted_terms(g, ranks, n1),
            _weighted_terms(g, ranks, mid),
            _weighted_terms(g, ranks, end),
        )
        g.remove_edge(n1, mid)
        g.add_edge(n1, end)
        after = (
            _weighted_terms(g, ranks, n1),
            _weighted_terms(g, ranks, mid),
            _weighted_terms(g, ranks, end),
        )
        if _triple_increased(before, after):
            return True, mid, end
        g.remove_edge(n1, end)
        g.add_edge(n1, mid)
    return False, -1, -1


@dataclass(frozen=True)
class TopologyStep:
    """Outcome of one per-node rewiring step."""

    added: bool
    removed: bool
    transferred: bool
    transfer_mid: int = -1
    transfer_end: int = -1


def apply_topology_step(g, ranks, policy, n1, rng, attempts=RULE_ATTEMPTS):
    """Run the add, remove, and transfer rules (in that order) for node n1.

    Each rule gets its own budget of fresh walks. Pure function of the
    random stream: same graph, ranks and rng state give the same result.
    """
    added = add_link_rule(g, ranks, policy, n1, rng, attempts)
    removed = remove_link_rule(g, ranks, policy, n1, rng, attempts)
    transferred, mid, end = _transfer(g, ranks, policy, n1, rng, attempts)
    return TopologyStep(added, removed, transferred, mid, end)
