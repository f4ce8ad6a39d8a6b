"""Reference network generators for baseline comparison: preferential
attachment growth, duplication-divergence growth, and the intrinsic-fitness
random graph.

These produce graphs to hold against the self-organized population
topologies. Unlike population graphs they may come out disconnected
(duplication-divergence in particular); metrics are then computed on the
largest component.
"""

import bisect
import math
import random

import numpy as np

from .graph import PopulationGraph

__all__ = [
    "ba_graph",
    "preferential_pick",
    "dd_graph",
    "fitness_link_graph",
    "fitness_graph",
    "largest_component",
    "component_subgraph",
    "degree_tail_exponent",
]


def preferential_pick(endpoint_list, rng):
    """One draw from the linear preferential-attachment distribution
    P(node) = degree/sum(degrees), realized by sampling a list holding
    each node once per incident edge end."""
    return endpoint_list[rng.randrange(len(endpoint_list))]


def ba_graph(target_n, m=2, m0=3, rng=None):
    """Growth with linear preferential attachment.

    Starts from a ring of m0 nodes (so every seed node has degree and the
    attachment distribution is defined), then each new node attaches m
    edges to distinct existing nodes drawn with probability proportional
    to their degree. Final edge count is m0 + m*(target_n - m0).
    """
    if not 1 <= m < m0:
        raise ValueError("need 1 <= m < m0, got m=%r m0=%r" % (m, m0))
    if target_n <= m0:
        raise ValueError("target_n must exceed m0")
    rng = rng or random.Random()
    g = PopulationGraph(target_n)
    ends = []
    for i in range(m0):
        g.add_edge(i, (i + 1) % m0)
    for i in range(m0):
        ends.extend([i] * g.degree(i))
    for v in range(m0, target_n):
        targets = set()
        while len(targets) < m:
            targets.add(preferential_pick(ends, rng))
        for t in targets:
            g.add_edge(v, t)
            ends.append(t)
            ends.append(v)
    return g


def dd_graph(target_n, delta=0.53, alpha_coeff=0.06, seed_n=5, rng=None):
    """Duplication and divergence growth.

    Each step copies a uniformly chosen node's link set onto a new node,
    drops every inherited link with probability delta, then offers a link
    from the duplicate to each other node with probability
    alpha_coeff / N (N = current network size). The graph may disconnect.
    """
    if not 0.0 <= delta <= 1.0:
        raise ValueError("delta must lie in [0, 1]")
    if target_n <= seed_n:
        raise ValueError("target_n must exceed the seed size")
    rng = rng or random.Random()
    g = PopulationGraph(target_n)
    for i in range(seed_n):
        g.add_edge(i, (i + 1) % seed_n)
    for v in range(seed_n, target_n):
        original = rng.randrange(v)
        inherited = [w for w in g.neighbors(original) if rng.random() >= delta]
        for w in inherited:
            g.add_edge(v, w)
        alpha = alpha_coeff / (v + 1)
        for w in range(v):
            if w not in g.neighbors(v) and rng.random() < alpha:
                g.add_edge(v, w)
    return g


def fitness_link_graph(values, x_max, rng=None):
    """Random graph where pair (i, j) links with probability
    x_i * x_j / x_max^2 for the given per-node values."""
    values = np.asarray(values, dtype=float)
    if np.any(values < 0) or np.any(values > x_max):
        raise ValueError("values must lie in [0, x_max]")
    rng = rng or random.Random()
    n = values.size
    g = PopulationGraph(n)
    scale = x_max * x_max
    for i in range(n - 1):
        xi = values[i]
        if xi == 0.0:
            continue
        for j in range(i + 1, n):
            if rng.random() < xi * values[j] / scale:
                g.add_edge(i, j)
    return g


def fitness_graph(n, dist="exponential", x_max=10.0, rng=None):
    """Intrinsic-fitness model: fixed n nodes, values drawn from `dist`
    (unit-rate exponential truncated at x_max, or uniform on [0, x_max]),
    links by mutual attraction x_i x_j / x_max^2.

    Returns (graph, values).
    """
    if x_max <= 0:
        raise ValueError("x_max must be positive")
    rng = rng or random.Random()
    values = np.empty(n)
    if dist == "exponential":
        for i in range(n):
            x = rng.expovariate(1.0)
            while x > x_max:  # truncated tail: redraw
                x = rng.expovariate(1.0)
            values[i] = x
    elif dist == "uniform":
        for i in range(n):
            values[i] = rng.random() * x_max
    else:
        raise ValueError("unknown fitness distribution %r" % (dist,))
    return fitness_link_graph(values, x_max, rng), values


def largest_component(g):
    """Node set of the largest connected component."""
    seen = [False] * g.n
    best = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        stack = [start]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        if len(comp) > len(best):
            best = comp
    return sorted(best)


def component_subgraph(g, nodes):
    """Relabeled subgraph over `nodes` (needs at least 3 of them)."""
    index = {v: i for i, v in enumerate(nodes)}
    edges = []
    for v in nodes:
        for w in g.neighbors(v):
            if w in index and index[w] > index[v]:
                edges.append((index[v], index[w]))
    return PopulationGraph(len(nodes), edges)


def degree_tail_exponent(degrees, k_min=2, min_tail=10):
    """Power-law tail exponent estimate from the degree CCDF.

    Least-squares slope of log P(K >= k) against log k over distinct
    degrees >= k_min whose tail still holds at least `min_tail` nodes;
    for P(k) ~ k^-gamma the CCDF slope is 1 - gamma, so gamma = 1 - slope.
    Returns (gamma, n_points).
    """
    degrees = sorted(degrees)
    n = len(degrees)
    xs = []
    ys = []
    for k in sorted(set(d for d in degrees if d >= k_min)):
        tail = n - bisect.bisect_left(degrees, k)
        if tail >= min_tail:
            xs.append(math.log(k))
            ys.append(math.log(tail / n))
    if len(xs) < 2:
        raise ValueError("not enough tail points to fit an exponent")
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)
    return 1.0 - slope, len(xs)
