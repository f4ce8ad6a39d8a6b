"""Topology analysis: path lengths, clustering, degree structure,
correlations, random-graph baselines, and the averaged measurement study
over self-organized population graphs.

All analyses are read-only over a PopulationGraph and safe to run in
parallel across snapshots. Correlation slopes are plain least-squares fits
and come back as nan when the graph is regular (no degree variance to fit
against).
"""

import math
from dataclasses import dataclass

from .engines import EngineConfig, run_sotea
from .graph import PopulationGraph

__all__ = [
    "characteristic_path_length",
    "clustering_coefficient",
    "average_clustering",
    "degree_histogram",
    "random_baselines",
    "nearest_neighbor_degree",
    "correlation_slopes",
    "poisson_chi_square",
    "TopologyReport",
    "topology_report",
    "graph_from_edges",
    "sotea_topology_study",
    "study_rows",
]


def characteristic_path_length(g):
    """Mean shortest-path length over all unordered node pairs.

    Requires a connected graph; one BFS per node.
    """
    total = 0
    for src in range(g.n):
        dist = g.bfs_distances(src)
        for v in range(src + 1, g.n):
            d = dist[v]
            if d < 0:
                raise ValueError("graph is disconnected; path length undefined")
            total += d
    return total / (g.n * (g.n - 1) / 2)


def clustering_coefficient(g, i):
    """Fraction of i's neighbor pairs that are themselves connected;
    zero for degree < 2."""
    adj = g._adj
    nbrs = tuple(adj[i])
    k = len(nbrs)
    if k < 2:
        return 0.0
    e = 0
    for a in range(k - 1):
        adj_a = adj[nbrs[a]]
        for b in range(a + 1, k):
            if nbrs[b] in adj_a:
                e += 1
    return 2.0 * e / (k * (k - 1))


def average_clustering(g):
    return sum(clustering_coefficient(g, i) for i in range(g.n)) / g.n


def degree_histogram(g):
    """Map degree -> node count; values sum to n."""
    hist = {}
    for k in g.degrees():
        hist[k] = hist.get(k, 0) + 1
    return hist


def random_baselines(n, k_ave):
    """(L_rand, c_rand) for an Erdos-Renyi graph of the same size and mean
    degree: ln(n)/ln(k_ave) and k_ave/n. Undefined for k_ave <= 1."""
    if k_ave <= 1.0:
        raise ValueError("random baselines need k_ave > 1, got %r" % (k_ave,))
    return math.log(n) / math.log(k_ave), k_ave / n


def nearest_neighbor_degree(g, i):
    """Mean degree over i's neighbors."""
    nbrs = g.neighbors(i)
    if not nbrs:
        raise ValueError("node %d is isolated" % i)
    return sum(len(g._adj[j]) for j in nbrs) / len(nbrs)


def _ls_slope(xs, ys):
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx == 0.0:
        return float("nan")
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return sxy / sxx


def correlation_slopes(g):
    """(ck_slope, knn_slope).

    ck_slope fits c_i against k_i over the per-node scatter; knn_slope
    fits the degree-binned mean neighbor degree against k. Both are nan
    when every node has the same degree.
    """
    degs = g.degrees()
    cs = [clustering_coefficient(g, i) for i in range(g.n)]
    ck = _ls_slope(degs, cs)
    by_k = {}
    for i, k in enumerate(degs):
        if k >= 1:
            by_k.setdefault(k, []).append(nearest_neighbor_degree(g, i))
    ks = sorted(by_k)
    means = [sum(by_k[k]) / len(by_k[k]) for k in ks]
    v = _ls_slope(ks, means) if len(ks) >= 2 else float("nan")
    return ck, v


def poisson_chi_square(g):
    """Chi-square statistic of the degree histogram against Poisson(k_ave).

    Reported as a raw statistic for judging how Poisson-like the degree
    distribution is; not a pass/fail test.
    """
    hist = degree_histogram(g)
    n = g.n
    lam = sum(k * c for k, c in hist.items()) / n
    if lam == 0:
        return 0.0
    kmax = max(hist)
    stat = 0.0
    tail = n
    for k in range(kmax + 1):
        expected = n * math.exp(-lam) * lam ** k / math.factorial(k)
        tail -= expected
        observed = hist.get(k, 0)
        if expected > 0:
            stat += (observed - expected) ** 2 / expected
    if tail > 1e-9:  # lump the k > kmax tail
        stat += tail
    return stat


@dataclass(frozen=True)
class TopologyReport:
    """One graph's metric row (or an average of such rows)."""

    path_length: float
    k_ave: float
    c_ave: float
    c_rand: float
    l_rand: float
    ck_slope: float
    knn_slope: float
    poisson_chi2: float

    def as_dict(self):
        return {
            "path_length": self.path_length,
            "k_ave": self.k_ave,
            "c_ave": self.c_ave,
            "c_rand": self.c_rand,
            "l_rand": self.l_rand,
            "ck_slope": self.ck_slope,
            "knn_slope": self.knn_slope,
            "poisson_chi2": self.poisson_chi2,
        }


def topology_report(g):
    k_ave = 2.0 * g.num_edges() / g.n
    if k_ave > 1.0:
        l_rand, c_rand = random_baselines(g.n, k_ave)
    else:
        l_rand, c_rand = float("nan"), float("nan")
    ck, v = correlation_slopes(g)
    return TopologyReport(
        path_length=characteristic_path_length(g),
        k_ave=k_ave,
        c_ave=average_clustering(g),
        c_rand=c_rand,
        l_rand=l_rand,
        ck_slope=ck,
        knn_slope=v,
        poisson_chi2=poisson_chi_square(g),
    )


def graph_from_edges(n, edges):
    """Rebuild a population graph from a snapshot's edge list."""
    return PopulationGraph(n, edges)


def _mean_report(reports):
    fields = ("path_length", "k_ave", "c_ave", "c_rand", "l_rand",
              "ck_slope", "knn_slope", "poisson_chi2")
    values = {}
    for f in fields:
        vals = [getattr(r, f) for r in reports if not math.isnan(getattr(r, f))]
        values[f] = sum(vals) / len(vals) if vals else float("nan")
    return TopologyReport(**values)


def sotea_topology_study(problem, pop_size=50, k_max_values=(3, 5, 7, 9),
                         runs=10, generations=1000, snapshot_every=50, seed=0):
    """Averaged topology measurements over self-organized population graphs.

    For each k_max, runs the topology-evolving engine `runs` times for
    `generations` generations on `problem`, snapshots the graph every
    `snapshot_every` generations, computes a TopologyReport per snapshot,
    and averages over snapshots and runs (slopes average over the defined
    values only). Returns {k_max: TopologyReport, "overall": TopologyReport}.
    """
    per_kmax = {}
    all_reports = []
    for k_max in k_max_values:
        reports = []
        for r in range(runs):
            cfg = EngineConfig("sotea", pop_size=pop_size,
                               max_evals=pop_size * generations,
                               max_generations=generations,
                               seed=seed + 1000 * k_max + r,
                               k_max=k_max, snapshot_every=snapshot_every)
            rec = run_sotea(cfg, problem)
            for _, edges in rec.snapshots:
                reports.append(topology_report(graph_from_edges(pop_size, edges)))
        per_kmax[k_max] = _mean_report(reports)
        all_reports.extend(reports)
    per_kmax["overall"] = _mean_report(all_reports)
    return per_kmax


def study_rows(study, pop_size, problem_name):
    """Tidy long-format rows (problem, n, k_max, metric, value) for CSV."""
    rows = []
    for k_max, report in study.items():
        for metric, value in report.as_dict().items():
            rows.append((problem_name, pop_size, k_max, metric, value))
    return rows
