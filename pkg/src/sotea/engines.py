"""Search engines: self-organizing topology EA, cellular GA, panmictic EAs.

All engines share one loop skeleton: pick parents, create one child with a
randomly chosen search operator, evaluate, and keep the better of child and
incumbent (or cull a survivor pool, for the panmictic designs). They differ
in where mates come from:

* sotea   - population on a graph that is rewired every generation by the
            rank-driven rules in `rewiring`; mates found by two-step walks.
* cga     - population on a static ring; mates drawn by linear ranking from
            the radius-R ring neighborhood.
* pea_es  - panmictic, mu parents create lambda offspring from uniform
            parent pairs, survivors selected from offspring plus the
            retained parents (all of them for the pseudo steady state
            update, just the best one for the generational update).
* pea_ga  - panmictic steady state: one child per step replaces the worst
            member when better.

The evaluation budget counts offspring evaluations; evaluating the initial
population is free, so a population of 50 runs exactly 3000 generations on
a 150,000-evaluation budget. A run is a pure function of its config: same
seed, same RunRecord, including topology snapshots.
"""

import random
from dataclasses import dataclass, field, replace

import numpy as np

from .graph import PopulationGraph
from .operators import create_offspring, pick_operator
from .rewiring import SetPointPolicy, apply_topology_step
from .selection import FitnessComparator, P_F_DEFAULT, select

__all__ = ["EngineConfig", "RunRecord", "run", "run_sotea", "run_cga",
           "run_pea_es", "run_pea_ga", "design_matrix", "ENGINE_FAMILIES"]

ENGINE_FAMILIES = ("sotea", "cga", "pea_es", "pea_ga")

_MATE_REDRAWS = 10


@dataclass(frozen=True)
class EngineConfig:
    """One engine design. Family-specific fields must be given for that
    family and left None elsewhere."""

    family: str
    pop_size: int = 50
    max_evals: int = 150_000
    max_generations: int = None
    seed: int = 0
    k_max: int = None          # sotea
    radius: int = None         # cga
    update: str = None         # pea_es: generational | pseudo_steady_state
    selection: str = None      # pea_es: tournament | truncation; pea_ga: tournament | linear_ranking
    operators: str = "seven"   # seven | two
    snapshot_every: int = 50

    def __post_init__(self):
        if self.family not in ENGINE_FAMILIES:
            raise ValueError("unknown engine family %r" % (self.family,))
        if self.pop_size < 3:
            raise ValueError("pop_size must be >= 3")
        if self.max_evals <= 0:
            raise ValueError("max_evals must be positive")
        if self.operators not in ("seven", "two"):
            raise ValueError("operators must be 'seven' or 'two'")
        used = {"sotea": ("k_max",), "cga": ("radius",),
                "pea_es": ("update", "selection"), "pea_ga": ("selection",)}[self.family]
        for name in ("k_max", "radius", "update", "selection"):
            value = getattr(self, name)
            if name in used and value is None:
                raise ValueError("%s config needs %s" % (self.family, name))
            if name not in used and value is not None:
                raise ValueError("%s config must not set %s" % (self.family, name))
        if self.family == "sotea" and self.k_max < 3:
            raise ValueError("k_max must be >= 3")
        if self.family == "cga" and self.radius < 1:
            raise ValueError("radius must be >= 1")
        if self.family == "pea_es":
            if self.update not in ("generational", "pseudo_steady_state"):
                raise ValueError("bad update %r" % (self.update,))
            if self.selection not in ("tournament", "truncation"):
                raise ValueError("bad selection %r" % (self.selection,))
            if self.update == "generational" and self.pop_size % 2:
                raise ValueError("generational update needs an even pop_size")
        if self.family == "pea_ga" and self.selection not in ("tournament", "linear_ranking"):
            raise ValueError("bad selection %r" % (self.selection,))

    def label(self):
        if self.family == "sotea":
            return "sotea_k%d" % self.k_max
        if self.family == "cga":
            return "cga_r%d" % self.radius
        ops = "7" if self.operators == "seven" else "2"
        if self.family == "pea_es":
            upd = "gen" if self.update == "generational" else "ss"
            sel = "tour" if self.selection == "tournament" else "trun"
            return "es_%s_%s_%s" % (upd, sel, ops)
        sel = "tour" if self.selection == "tournament" else "lin"
        return "ga_%s_%s" % (sel, ops)

    def design_class(self):
        """Coarse class used by the comparative statistics."""
        return "pea" if self.family.startswith("pea") else self.family

    def to_json_dict(self):
        return {k: getattr(self, k) for k in (
            "family", "pop_size", "max_evals", "max_generations", "seed",
            "k_max", "radius", "update", "selection", "operators", "snapshot_every")}

    @classmethod
    def from_json_dict(cls, d):
        fields = ("family", "pop_size", "max_evals", "max_generations", "seed",
                  "k_max", "radius", "update", "selection", "operators", "snapshot_every")
        return cls(**{k: d[k] for k in fields if d.get(k) is not None})

    def with_seed(self, seed):
        """Copy of this config with a different seed (plans derive one per run)."""
        return replace(self, seed=seed)


@dataclass
class RunRecord:
    """Everything one run produced.

    trace rows are (generation, evals, best, median, feasible) where best
    and median are raw objectives of the current population and feasible
    flags whether the population best violates no constraint.
    """

    problem: str
    config_label: str
    seed: int
    evals: int = 0
    generations: int = 0
    best_objective: float = None
    best_feasible: bool = False
    best_genome: tuple = ()
    trace: list = field(default_factory=list)
    snapshots: list = field(default_factory=list)
    final_objectives: tuple = ()
    final_phis: tuple = ()
    notes: tuple = ()


class _Run:
    """Shared bookkeeping for one engine run."""

    def __init__(self, cfg, problem, pop_n):
        self.cfg = cfg
        self.problem = problem
        self.rng = random.Random(cfg.seed)
        self.nprng = np.random.default_rng(cfg.seed)
        self.lower = np.asarray(problem.lower)
        self.upper = np.asarray(problem.upper)
        self.integer = np.asarray(problem.integer, dtype=bool)
        p_f = P_F_DEFAULT if problem.n_constraints else None
        self.cmp = FitnessComparator(maximize=problem.maximize, p_f=p_f)
        self.evals = 0
        self.genomes = [self._random_genome() for _ in range(pop_n)]
        self.objs = []
        self.phis = []
        for x in self.genomes:
            ev = problem.evaluate(x, check=False)  # initialization is free
            self.objs.append(ev.objective)
            self.phis.append(ev.phi)
        self.best_obj = None
        self.best_phi = None
        self.best_genome = None
        for i in range(pop_n):
            self._offer_best(self.genomes[i], self.objs[i], self.phis[i])
        self.record = RunRecord(problem.name, cfg.label(), cfg.seed)
        self.trace_row(0)

    def _random_genome(self):
        x = self.lower + (self.upper - self.lower) * self.nprng.random(self.problem.dim)
        if self.integer.any():
            ints = self.nprng.integers(self.lower[self.integer].astype(int),
                                       self.upper[self.integer].astype(int) + 1)
            x[self.integer] = ints
        return x

    def _offer_best(self, genome, obj, phi):
        # Deterministic record order: feasible first, then signed objective.
        key = (phi > 0.0, self.cmp.key(obj))
        if self.best_obj is None or key < (self.best_phi > 0.0, self.cmp.key(self.best_obj)):
            self.best_obj = obj
            self.best_phi = phi
            self.best_genome = genome

    def eval_child(self, child):
        ev = self.problem.evaluate(child, check=False)
        self.evals += 1
        phi = ev.phi
        self._offer_best(child, ev.objective, phi)
        return ev.objective, phi

    def survivor_better(self, obj, phi, inc_obj, inc_phi):
        """Deterministic pairwise rule for replacement decisions: feasible
        beats infeasible, feasible pairs compare objectives, infeasible
        pairs compare total violation. The stochastic-ranking comparator
        stays in charge of population orderings; using its probabilistic
        rule pairwise as well would flip node occupants between feasible
        and infeasible every few generations and the population never
        settles onto the active constraint boundaries."""
        key = (phi > 0.0, phi if phi > 0.0 else self.cmp.key(obj))
        inc = (inc_phi > 0.0, inc_phi if inc_phi > 0.0 else self.cmp.key(inc_obj))
        return key < inc

    def child(self, op, i, j, p3_genome=None):
        p1_better = True
        if op == "wrights_heuristic_xover":
            p1_better = self.cmp.better(self.objs[i], self.phis[i],
                                        self.objs[j], self.phis[j], self.rng)
        return create_offspring(op, self.genomes[i], self.genomes[j],
                                self.lower, self.upper, self.integer,
                                self.nprng, p3=p3_genome, p1_better=p1_better)

    def pop_best_index(self):
        best = 0
        best_key = (self.phis[0] > 0.0, self.cmp.key(self.objs[0]))
        for i in range(1, len(self.objs)):
            key = (self.phis[i] > 0.0, self.cmp.key(self.objs[i]))
            if key < best_key:
                best, best_key = i, key
        return best

    def trace_row(self, gen):
        i = self.pop_best_index()
        self.record.trace.append((gen, self.evals, self.objs[i],
                                  float(np.median(self.objs)), self.phis[i] == 0.0))

    def finish(self, gen):
        r = self.record
        r.evals = self.evals
        r.generations = gen
        r.best_objective = self.best_obj
        r.best_feasible = self.best_phi == 0.0
        r.best_genome = tuple(map(float, self.best_genome))
        r.final_objectives = tuple(self.objs)
        r.final_phis = tuple(self.phis)
        return r

    def generations_left(self, gen, batch):
        if self.cfg.max_generations is not None and gen >= self.cfg.max_generations:
            return False
        return self.evals + batch <= self.cfg.max_evals


def _walk_mate(g, n1, rng):
    """Two-step-walk mate for n1; redraw when the walk loops back, then
    fall back to the walk midpoint."""
    mid = None
    for _ in range(_MATE_REDRAWS):
        mid, end = g.two_step_walk(n1, rng)
        if end != n1:
            return end
    return mid


def run_sotea(cfg, problem):
    """Self-organizing topology EA run.

    Ring start; each generation refreshes global ranks, then every node in
    index order applies the three rewiring rules, mates with the endpoint
    of a two-step walk, and the better of child and incumbent enters the
    next population (synchronous replacement).
    """
    if cfg.family != "sotea":
        raise ValueError("config family is %r, not sotea" % (cfg.family,))
    st = _Run(cfg, problem, cfg.pop_size)
    n = cfg.pop_size
    g = PopulationGraph.ring(n)
    policy = SetPointPolicy(k_max=cfg.k_max)
    rng = st.rng
    gen = 0
    while st.generations_left(gen, n):
        ranks = st.cmp.ranks(st.objs, st.phis, rng)
        new_genomes = list(st.genomes)
        new_objs = list(st.objs)
        new_phis = list(st.phis)
        for n1 in range(n):
            apply_topology_step(g, ranks, policy, n1, rng)
            p2 = _walk_mate(g, n1, rng)
            op = pick_operator(cfg.operators, rng)
            p3 = st.genomes[_walk_mate(g, n1, rng)] if op == "differential_evolution" else None
            child = st.child(op, n1, p2, p3)
            obj, phi = st.eval_child(child)
            if st.survivor_better(obj, phi, st.objs[n1], st.phis[n1]):
                new_genomes[n1] = child
                new_objs[n1] = obj
                new_phis[n1] = phi
        st.genomes, st.objs, st.phis = new_genomes, new_objs, new_phis
        gen += 1
        st.trace_row(gen)
        if gen % cfg.snapshot_every == 0:
            st.record.snapshots.append((gen, tuple(g.edges())))
    return st.finish(gen)


def _ring_neighborhood(n, n1, radius):
    out = []
    for d in range(1, radius + 1):
        a = (n1 - d) % n
        b = (n1 + d) % n
        if a != n1 and a not in out:
            out.append(a)
        if b != n1 and b not in out:
            out.append(b)
    return out


def run_cga(cfg, problem):
    """Cellular GA run: static ring, mates by linear ranking within ring
    distance <= radius of each node, otherwise the sotea loop without the
    rewiring. A radius reaching the whole ring is allowed and flagged."""
    if cfg.family != "cga":
        raise ValueError("config family is %r, not cga" % (cfg.family,))
    st = _Run(cfg, problem, cfg.pop_size)
    n = cfg.pop_size
    rng = st.rng
    pools = [_ring_neighborhood(n, n1, cfg.radius) for n1 in range(n)]
    if all(len(p) == n - 1 for p in pools):
        st.record.notes = ("panmictic_neighborhood",)
    ring_edges = tuple(PopulationGraph.ring(n).edges())
    gen = 0
    while st.generations_left(gen, n):
        order = st.cmp.sort(st.objs, st.phis, rng)
        rank_of = [0] * n
        for pos, i in enumerate(order):
            rank_of[i] = pos
        new_genomes = list(st.genomes)
        new_objs = list(st.objs)
        new_phis = list(st.phis)
        for n1 in range(n):
            p2 = select("linear_ranking", pools[n1], rank_of, 1, rng)[0]
            op = pick_operator(cfg.operators, rng)
            p3 = None
            if op == "differential_evolution":
                p3 = st.genomes[select("linear_ranking", pools[n1], rank_of, 1, rng)[0]]
            child = st.child(op, n1, p2, p3)
            obj, phi = st.eval_child(child)
            if st.survivor_better(obj, phi, st.objs[n1], st.phis[n1]):
                new_genomes[n1] = child
                new_objs[n1] = obj
                new_phis[n1] = phi
        st.genomes, st.objs, st.phis = new_genomes, new_objs, new_phis
        gen += 1
        st.trace_row(gen)
        if gen % cfg.snapshot_every == 0:
            st.record.snapshots.append((gen, ring_edges))
    return st.finish(gen)


_ES_SELECTION = {"tournament": "binary_tournament_no_replacement", "truncation": "truncation"}


def run_pea_es(cfg, problem):
    """Panmictic ES run.

    Generational update: mu = pop_size/2 parents make lambda = pop_size
    offspring; survivors are selected from the offspring plus the single
    best parent (elitism). Pseudo steady state: mu = lambda = pop_size and
    all parents join the survivor pool.
    """
    if cfg.family != "pea_es":
        raise ValueError("config family is %r, not pea_es" % (cfg.family,))
    generational = cfg.update == "generational"
    lam = cfg.pop_size
    mu = cfg.pop_size // 2 if generational else cfg.pop_size
    st = _Run(cfg, problem, mu)
    rng = st.rng
    scheme = _ES_SELECTION[cfg.selection]
    gen = 0
    while st.generations_left(gen, lam):
        pool_genomes = []
        pool_objs = []
        pool_phis = []
        for _ in range(lam):
            i, j = rng.sample(range(mu), 2)
            op = pick_operator(cfg.operators, rng)
            p3 = st.genomes[rng.randrange(mu)] if op == "differential_evolution" else None
            child = st.child(op, i, j, p3)
            obj, phi = st.eval_child(child)
            pool_genomes.append(child)
            pool_objs.append(obj)
            pool_phis.append(phi)
        if generational:
            keep = [st.pop_best_index()]
        else:
            keep = range(mu)
        for i in keep:
            pool_genomes.append(st.genomes[i])
            pool_objs.append(st.objs[i])
            pool_phis.append(st.phis[i])
        order = st.cmp.sort(pool_objs, pool_phis, rng)
        rank_of = [0] * len(order)
        for pos, i in enumerate(order):
            rank_of[i] = pos
        chosen = select(scheme, list(range(len(pool_objs))), rank_of, mu, rng)
        st.genomes = [pool_genomes[i] for i in chosen]
        st.objs = [pool_objs[i] for i in chosen]
        st.phis = [pool_phis[i] for i in chosen]
        gen += 1
        st.trace_row(gen)
    return st.finish(gen)


_GA_SELECTION = {"tournament": "binary_tournament_no_replacement", "linear_ranking": "linear_ranking"}


def run_pea_ga(cfg, problem):
    """Panmictic steady-state GA run: two parents per step by the
    configured scheme, one child, replace the worst member if better."""
    if cfg.family != "pea_ga":
        raise ValueError("config family is %r, not pea_ga" % (cfg.family,))
    n = cfg.pop_size
    st = _Run(cfg, problem, n)
    rng = st.rng
    scheme = _GA_SELECTION[cfg.selection]
    everyone = list(range(n))
    step = 0
    while st.generations_left(step, 1):
        order = st.cmp.sort(st.objs, st.phis, rng)
        rank_of = [0] * n
        for pos, i in enumerate(order):
            rank_of[i] = pos
        i, j = select(scheme, everyone, rank_of, 2, rng)
        op = pick_operator(cfg.operators, rng)
        p3 = st.genomes[rng.randrange(n)] if op == "differential_evolution" else None
        child = st.child(op, i, j, p3)
        obj, phi = st.eval_child(child)
        worst = order[-1]
        if st.survivor_better(obj, phi, st.objs[worst], st.phis[worst]):
            st.genomes[worst] = child
            st.objs[worst] = obj
            st.phis[worst] = phi
        step += 1
        if step % n == 0:
            st.trace_row(step)
    if step % n:
        st.trace_row(step)
    return st.finish(step)


_RUNNERS = {"sotea": run_sotea, "cga": run_cga, "pea_es": run_pea_es, "pea_ga": run_pea_ga}


def run(cfg, problem):
    """Run the engine the config names and return its RunRecord."""
    return _RUNNERS[cfg.family](cfg, problem)


def design_matrix(pop_size=50, max_evals=150_000, k_max_values=(3, 5, 7, 9),
                  radii=(1, 2, 4, 8, 12)):
    """The full set of engine designs compared against each other: a k_max
    sweep for sotea, a radius sweep for the cGA, eight ES designs and four
    steady-state GA designs."""
    configs = []
    for k in k_max_values:
        configs.append(EngineConfig("sotea", pop_size, max_evals, k_max=k))
    for r in radii:
        configs.append(EngineConfig("cga", pop_size, max_evals, radius=r))
    for update in ("generational", "pseudo_steady_state"):
        for sel in ("tournament", "truncation"):
            for ops in ("seven", "two"):
                configs.append(EngineConfig("pea_es", pop_size, max_evals,
                                            update=update, selection=sel, operators=ops))
    for sel in ("tournament", "linear_ranking"):
        for ops in ("seven", "two"):
            configs.append(EngineConfig("pea_ga", pop_size, max_evals,
                                        selection=sel, operators=ops))
    return configs
