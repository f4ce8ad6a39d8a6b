"""Post-hoc analysis over a result store: performance profiles, pairwise
design-class significance tests, and the overall class statistics table.

Conventions. A run's "final value" is its best feasible objective; runs
that never reached feasibility count as worst-possible. All comparisons
happen in signed space (objectives negated for maximization problems), so
smaller is always better here. One-sided Mann-Whitney tests ask whether
one sample sits below another, and results with p > 0.05 are reported as
insignificant ("insig"); a second flag marks the stricter 99% level.
"""

import math
from dataclasses import dataclass

from .problems import get as get_problem
from .stats import mann_whitney_u, midranks

__all__ = [
    "ProfilePoint",
    "performance_profile",
    "profiles_rows",
    "class_comparisons",
    "aggregate_stats",
    "found_best_known",
    "write_csv",
    "PROFILE_GRID",
    "CLASS_ORDER",
]

PROFILE_GRID = 500
CLASS_ORDER = ("pea", "cga", "sotea")
_WORST = float("inf")


def found_best_known(value, feasible, best_known, maximize=False):
    """Whether a final value counts as having found the best known
    solution: feasible and within max(1e-6, 1e-4 |best|) of it."""
    if not feasible or value is None or best_known is None:
        return False
    return abs(value - best_known) <= max(1e-6, 1e-4 * abs(best_known))


def _design_class(meta):
    family = meta["config"]["family"]
    return "pea" if family.startswith("pea") else family


def _signed_final(meta, maximize):
    if not meta.get("best_feasible"):
        return _WORST
    v = meta["best_objective"]
    return -v if maximize else v


@dataclass(frozen=True)
class ProfilePoint:
    evals: int
    median_best: float
    run_bests: tuple


def _best_so_far_at(trace, grid, maximize):
    """Best-so-far trace value at each grid point (raw objective)."""
    out = []
    best = None
    ti = 0
    for e in grid:
        while ti < len(trace) and trace[ti][1] <= e:
            v = trace[ti][2]
            if best is None or (v > best if maximize else v < best):
                best = v
            ti += 1
        out.append(best)
    return out


def _median(values):
    s = sorted(values)
    n = len(s)
    mid = n // 2
    return s[mid] if n % 2 else 0.5 * (s[mid - 1] + s[mid])


def performance_profile(store, problem_name, config_label, grid_step=PROFILE_GRID):
    """Median best-so-far objective on a fixed evaluation grid across the
    runs of one config on one problem."""
    maximize = get_problem(problem_name).maximize
    metas = [m for m in store.metas()
             if m["problem"] == problem_name and m["config_label"] == config_label]
    if not metas:
        raise ValueError("no completed runs for %s / %s" % (problem_name, config_label))
    max_evals = max(m["evals"] for m in metas)
    grid = list(range(grid_step, max_evals + 1, grid_step))
    if not grid:
        grid = [max_evals]
    per_run = [_best_so_far_at(store.trace(m), grid, maximize) for m in metas]
    points = []
    for gi, e in enumerate(grid):
        bests = tuple(run[gi] for run in per_run)
        points.append(ProfilePoint(e, _median(bests), bests))
    return points


def profiles_rows(store, grid_step=PROFILE_GRID):
    """(problem, config, evals, median_best, n_runs) rows for every
    problem/config pair in the store."""
    pairs = sorted({(m["problem"], m["config_label"]) for m in store.metas()})
    rows = []
    for problem_name, label in pairs:
        for pt in performance_profile(store, problem_name, label, grid_step):
            rows.append((problem_name, label, pt.evals, pt.median_best, len(pt.run_bests)))
    return rows


def _one_sided(a, b):
    """(winner_index, p) for the directional test between signed samples;
    winner_index is 0 or 1 for the sample with smaller values, p is that
    direction's one-sided p-value."""
    _, p_a = mann_whitney_u(a, b)
    _, p_b = mann_whitney_u(b, a)
    return (0, p_a) if p_a <= p_b else (1, p_b)


def _tuned_label(metas, maximize):
    """Config label with the best median signed final value."""
    by_label = {}
    for m in metas:
        by_label.setdefault(m["config_label"], []).append(_signed_final(m, maximize))
    scored = sorted((_median(v), label) for label, v in by_label.items())
    return scored[0][1]


def class_comparisons(store):
    """Per-problem pairwise class tests.

    For each problem and each class pair, reports the winner and p-value
    for the tuned comparison (best config of each class by median final)
    and the pooled comparison (all runs of each class), with flags for
    insignificance at 0.05 and at the stricter 0.01 level. Missing
    classes produce rows marked "missing".
    """
    metas = store.metas()
    problems = sorted({m["problem"] for m in metas})
    rows = []
    for problem_name in problems:
        maximize = get_problem(problem_name).maximize
        by_class = {}
        for m in metas:
            if m["problem"] == problem_name:
                by_class.setdefault(_design_class(m), []).append(m)
        for name_a, name_b in (("pea", "sotea"), ("cga", "sotea"), ("pea", "cga")):
            pair = "%s_vs_%s" % (name_a, name_b)
            if name_a not in by_class or name_b not in by_class:
                rows.append((problem_name, pair, "missing", "", "missing", "", "", ""))
                continue
            entries = []
            for scope in ("tuned", "pooled"):
                groups = []
                for cname in (name_a, name_b):
                    ms = by_class[cname]
                    if scope == "tuned":
                        tuned = _tuned_label(ms, maximize)
                        ms = [m for m in ms if m["config_label"] == tuned]
                    groups.append([_signed_final(m, maximize) for m in ms])
                widx, p = _one_sided(groups[0], groups[1])
                winner = (name_a, name_b)[widx] if p <= 0.05 else "insig"
                entries.append((winner, p))
            rows.append((problem_name, pair,
                         entries[0][0], entries[0][1],
                         entries[1][0], entries[1][1],
                         int(entries[0][1] <= 0.01), int(entries[1][1] <= 0.01)))
    return rows


def aggregate_stats(store):
    """Overall class statistics, one row per design class.

    Columns: class; mean over problems of the share of the class's runs
    that found the best known solution; mean share of runs landing in the
    best 5% of all final solutions on their problem; one-sided superiority
    test of the class against the two others pooled (per-problem midranks
    pooled across problems), pass = p < 0.05; share of problems where the
    class owned the design with the best median final; share of problems
    where the class found the best known at least once.
    """
    metas = store.metas()
    problems = sorted({m["problem"] for m in metas})
    found = {c: [] for c in CLASS_ORDER}
    top5 = {c: [] for c in CLASS_ORDER}
    best_design = {c: 0 for c in CLASS_ORDER}
    found_once = {c: 0 for c in CLASS_ORDER}
    class_ranks = {c: [] for c in CLASS_ORDER}
    for problem_name in problems:
        problem = get_problem(problem_name)
        maximize = problem.maximize
        pm = [m for m in metas if m["problem"] == problem_name]
        finals = [_signed_final(m, maximize) for m in pm]
        classes = [_design_class(m) for m in pm]
        n_all = len(finals)
        k = max(1, math.ceil(0.05 * n_all))
        threshold = sorted(finals)[k - 1]
        ranks = midranks(finals)
        hits = {c: 0 for c in CLASS_ORDER}
        tops = {c: 0 for c in CLASS_ORDER}
        counts = {c: 0 for c in CLASS_ORDER}
        for m, final, cls, rank in zip(pm, finals, classes, ranks):
            counts[cls] += 1
            class_ranks[cls].append(rank / n_all)  # normalized within problem
            if found_best_known(m["best_objective"], m.get("best_feasible"),
                                problem.best_known, maximize):
                hits[cls] += 1
            if final <= threshold:
                tops[cls] += 1
        for c in CLASS_ORDER:
            if counts[c]:
                found[c].append(hits[c] / counts[c])
                top5[c].append(tops[c] / counts[c])
                if hits[c]:
                    found_once[c] += 1
        best_design[_design_class_of_label(_tuned_label(pm, maximize), pm)] += 1
    rows = []
    n_problems = len(problems)
    for c in CLASS_ORDER:
        others = [r for cc in CLASS_ORDER if cc != c for r in class_ranks[cc]]
        if class_ranks[c] and others:
            _, p = mann_whitney_u(class_ranks[c], others)
        else:
            p = 0.5
        rows.append((
            c,
            100.0 * _mean(found[c]),
            100.0 * _mean(top5[c]),
            "passed" if p < 0.05 else "failed",
            p,
            100.0 * best_design[c] / n_problems if n_problems else 0.0,
            100.0 * found_once[c] / n_problems if n_problems else 0.0,
        ))
    return rows


def _mean(values):
    return sum(values) / len(values) if values else 0.0


def _design_class_of_label(label, metas):
    for m in metas:
        if m["config_label"] == label:
            return _design_class(m)
    raise ValueError("label %r not in store" % (label,))


def write_csv(path, header, rows):
    """Plain deterministic CSV: repr for floats, str otherwise."""
    def fmt(v):
        if isinstance(v, bool):
            return str(int(v))
        if isinstance(v, float):
            return repr(v)
        return str(v)

    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")
