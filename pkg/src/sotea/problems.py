"""Benchmark problem suite: six constrained engineering design problems and
six artificial test functions.

Each problem is a `ProblemSpec` bundling dimension, per-variable bounds and
integrality, optimization sense, inequality constraints (g_i(x) <= 0 means
satisfied), and the best known objective value. `evaluate` returns the raw
objective together with the positive parts of the constraint values;
maximization problems (alkylation, ecc) keep their natural sign here and
are negated only inside the search engines.

Evaluations are pure functions of the genome and can run in parallel.
"""

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = ["ProblemSpec", "Evaluation", "registry", "get", "PROBLEM_NAMES"]

PROBLEM_NAMES = (
    "pressure_vessel",
    "alkylation",
    "heat_exchanger",
    "gear_train",
    "spring",
    "welded_beam",
    "freq_mod",
    "ecc",
    "sys_lin_eq",
    "rastrigin",
    "griewangk",
    "watson",
)


@dataclass(frozen=True)
class Evaluation:
    """Raw objective plus max(0, g_i) per inequality constraint."""

    objective: float
    violations: tuple

    @property
    def phi(self):
        """Total constraint violation; zero iff feasible."""
        return sum(self.violations)

    def is_feasible(self, slack=1e-6):
        return all(v <= slack for v in self.violations)


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    dim: int
    lower: tuple
    upper: tuple
    integer: tuple
    sense: str  # "min" or "max"
    n_constraints: int
    best_known: float
    _objective: object = field(repr=False)
    _constraints: object = field(repr=False, default=None)

    @property
    def maximize(self):
        return self.sense == "max"

    def objective(self, x):
        return float(self._objective(np.asarray(x, dtype=float)))

    def constraint_values(self, x):
        """Raw g_i(x) values (feasible when all <= 0)."""
        if self._constraints is None:
            return np.empty(0)
        return np.asarray(self._constraints(np.asarray(x, dtype=float)), dtype=float)

    def validate(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError("%s expects %d variables, got shape %r" % (self.name, self.dim, x.shape))
        if np.any(x < self.lower) or np.any(x > self.upper):
            raise ValueError("%s: point outside bounds" % self.name)
        for i, is_int in enumerate(self.integer):
            if is_int and x[i] != round(x[i]):
                raise ValueError("%s: variable %d must be integral, got %r" % (self.name, i, x[i]))
        return x

    def evaluate(self, x, check=True):
        """Evaluate objective and constraint violations at x.

        check=False skips the precondition validation; engines use it on
        genomes that were just repaired into the feasible box.
        """
        x = self.validate(x) if check else np.asarray(x, dtype=float)
        obj = float(self._objective(x))
        if self._constraints is None:
            return Evaluation(obj, ())
        g = self._constraints(x)
        return Evaluation(obj, tuple(v if v > 0.0 else 0.0 for v in map(float, g)))

    def as_json_dict(self):
        return {
            "name": self.name,
            "dim": self.dim,
            "lower": list(self.lower),
            "upper": list(self.upper),
            "integer": list(self.integer),
            "sense": self.sense,
            "n_constraints": self.n_constraints,
            "best_known": self.best_known,
        }


# --- engineering design problems -------------------------------------------

def _pressure_vessel_obj(x):
    # x = (R, L, T_h, T_s); thicknesses count 0.0625-inch plates
    x1, x2, x3, x4 = x
    return (
        0.6224 * x1 * x2 * (0.0625 * x3)
        + 1.7781 * x1 * x1 * (0.0625 * x4)
        + 3.1661 * x2 * (0.0625 * x3) ** 2
        + 19.84 * x1 * (0.0625 * x3) ** 2
    )


def _pressure_vessel_g(x):
    x1, x2, x3, x4 = x
    return (
        -x3 + 0.0193 * x1,
        -x4 + 0.00954 * x1,
        -math.pi * x1 * x1 * x2 - 4.0 / 3.0 * math.pi * x1 ** 3 + 1296000.0,
        x2 - 240.0,
    )


def _alkylation_obj(x):
    # Alkylate revenue minus feed, recycle and acid costs (maximized).
    x1, x2, x3, _, x5, x6, _ = x
    return 0.063 * x3 * x5 - 1.715 * x1 - 0.035 * x1 * x6 - 4.0565 * x3 - 10.0 * x2


def _alkylation_g(x):
    x1, x2, x3, x4, x5, x6, x7 = x
    return (
        0.0059553571 * x6 * x6 * x1 + 0.88392857 * x3 - 0.1175625 * x6 * x1 - x1,
        1.1088 * x1 + 0.1303533 * x1 * x6 - 0.0066033 * x1 * x6 * x6 - x3,
        6.66173269 * x6 * x6 + 172.39878 * x5 - 56.596669 * x4 - 191.20592 * x6 - 10000.0,
        1.08702 * x6 + 0.32175 * x4 - 0.03762 * x6 * x6 - x5 + 56.85075,
        0.006198 * x7 * x4 * x3 + 2462.3121 * x2 - 25.125634 * x2 * x4 - x3 * x4,
        161.18996 * x4 * x3 + 5000.0 * x2 * x4 - 489510.0 * x2 - x3 * x4 * x7,
        0.33 * x7 - x5 + 44.333333,
        0.022556 * x5 - 0.007595 * x7 - 1.0,
        0.00061 * x3 - 0.0005 * x1 - 1.0,
        0.819672 * x1 - x3 + 0.819672,
        24500.0 * x2 - 250.0 * x2 * x4 - x3 * x4,
        1020.4082 * x4 * x2 + 1.2244898 * x3 * x4 - 100000.0 * x2,
        6.25 * x1 * x6 + 6.25 * x1 - 7.625 * x3 - 100000.0,
        1.22 * x3 - x6 * x1 - x1 + 1.0,
    )


def _heat_exchanger_obj(x):
    return x[0] + x[1] + x[2]


def _heat_exchanger_g(x):
    x1, x2, x3, x4, x5 = x
    return (
        100.0 * x1 - x1 * (400.0 - x4) + 833.33252 * x4 - 83333.333,
        x2 * x4 - x2 * (400.0 - x5 + x4) - 1250.0 * x4 + 1250.0 * x5,
        x3 * x5 - x3 * (100.0 + x5) - 2500.0 * x5 + 1250000.0,
    )


def _gear_train_obj(x):
    return (1.0 / 6.931 - (x[0] * x[1]) / (x[2] * x[3])) ** 2


def _spring_obj(x):
    d, D, N = x
    return (N + 2.0) * D * d * d


def _spring_g(x):
    d, D, N = x
    return (
        1.0 - D ** 3 * N / (71785.0 * d ** 4),
        (4.0 * D * D - d * D) / (12566.0 * (D * d ** 3 - d ** 4)) + 1.0 / (5108.0 * d * d) - 1.0,
        1.0 - 140.45 * d / (D * D * N),
        (D + d) / 1.5 - 1.0,
    )


_WB_P = 6000.0
_WB_L = 14.0
_WB_E = 30e6
_WB_G = 12e6
_WB_TAU_MAX = 13600.0
_WB_SIGMA_MAX = 30000.0
_WB_DELTA_MAX = 0.25


def _welded_beam_obj(x):
    x1, x2, x3, x4 = x
    return 1.10471 * x1 * x1 * x2 + 0.04811 * x3 * x4 * (14.0 + x2)


def _welded_beam_g(x):
    x1, x2, x3, x4 = x
    tau_p = _WB_P / (math.sqrt(2.0) * x1 * x2)
    M = _WB_P * (_WB_L + x2 / 2.0)
    R = math.sqrt(x2 * x2 / 4.0 + ((x1 + x3) / 2.0) ** 2)
    J = 2.0 * (math.sqrt(2.0) * x1 * x2 * (x2 * x2 / 12.0 + ((x1 + x3) / 2.0) ** 2))
    tau_pp = M * R / J
    tau = math.sqrt(tau_p * tau_p + 2.0 * tau_p * tau_pp * x2 / (2.0 * R) + tau_pp * tau_pp)
    sigma = 6.0 * _WB_P * _WB_L / (x4 * x3 * x3)
    delta = 4.0 * _WB_P * _WB_L ** 3 / (_WB_E * x3 ** 3 * x4)
    p_c = (4.013 * _WB_E * math.sqrt(x3 * x3 * x4 ** 6 / 36.0) / _WB_L ** 2) * (
        1.0 - x3 / (2.0 * _WB_L) * math.sqrt(_WB_E / (4.0 * _WB_G))
    )
    return (
        tau - _WB_TAU_MAX,
        sigma - _WB_SIGMA_MAX,
        x1 - x4,
        0.10471 * x1 * x1 + 0.04811 * x3 * x4 * (14.0 + x2) - 5.0,
        0.125 - x1,
        delta - _WB_DELTA_MAX,
        _WB_P - p_c,
    )


# --- artificial test functions ----------------------------------------------

_FM_X0 = (1.0, 5.0, 1.5, 4.8, 2.0, 4.9)
_FM_THETA = 2.0 * math.pi / 100.0
_FM_T = np.arange(101, dtype=float)


def _fm_signal(x, t):
    return x[0] * np.sin(x[1] * t * _FM_THETA + x[2] * np.sin(x[3] * t * _FM_THETA + x[4] * np.sin(x[5] * t * _FM_THETA)))


_FM_TARGET = _fm_signal(np.asarray(_FM_X0), _FM_T)


def _freq_mod_obj(x):
    diff = _fm_signal(x, _FM_T) - _FM_TARGET
    return float(np.dot(diff, diff))


_ECC_M = 24
_ECC_N = 12


def _ecc_obj(x):
    """Inverse sum of squared inverse pairwise Hamming distances.

    Codebooks containing duplicate words score 0 (the worst possible value
    for this maximization problem) since their distance is undefined.
    """
    words = np.asarray(x, dtype=np.int8).reshape(_ECC_M, _ECC_N)
    dist = (words[:, None, :] != words[None, :, :]).sum(axis=2)
    off = dist[~np.eye(_ECC_M, dtype=bool)]
    if np.any(off == 0):
        return 0.0
    return float(1.0 / np.sum(1.0 / (off.astype(float) ** 2)))


_SLE_A = np.array(
    [
        [5, 4, 5, 2, 9, 5, 4, 2, 3, 1],
        [9, 7, 1, 1, 7, 2, 2, 6, 6, 9],
        [3, 1, 8, 6, 9, 7, 4, 2, 1, 6],
        [8, 3, 7, 3, 7, 5, 3, 9, 9, 5],
        [9, 5, 1, 6, 3, 4, 2, 3, 3, 9],
        [1, 2, 3, 1, 7, 6, 6, 3, 3, 3],
        [1, 5, 7, 8, 1, 4, 7, 8, 4, 8],
        [9, 3, 8, 6, 3, 4, 7, 1, 8, 1],
        [8, 2, 8, 5, 3, 8, 7, 2, 7, 5],
        [2, 1, 2, 2, 9, 8, 7, 4, 4, 1],
    ],
    dtype=float,
)
_SLE_B = np.array([40, 50, 47, 59, 45, 35, 53, 50, 55, 40], dtype=float)


def _sys_lin_eq_obj(x):
    return float(np.sum(np.abs(_SLE_A @ x - _SLE_B)))


def _rastrigin_obj(x):
    return float(10.0 * x.size + np.sum(x * x - 10.0 * np.cos(2.0 * math.pi * x)))


_GRIEWANGK_SQRT = None


def _griewangk_obj(x):
    global _GRIEWANGK_SQRT
    if _GRIEWANGK_SQRT is None or _GRIEWANGK_SQRT.size != x.size:
        _GRIEWANGK_SQRT = np.sqrt(np.arange(1, x.size + 1, dtype=float))
    return float(np.sum(x * x) / 4000.0 - np.prod(np.cos(x / _GRIEWANGK_SQRT)) + 1.0)


def _watson_obj(x):
    total = 0.0
    for i in range(1, 31):
        a = (i - 1) / 29.0
        s1 = 0.0
        s2 = 0.0
        ap = 1.0
        for j in range(1, 6):
            s1 += j * ap * x[j]
            s2 += ap * x[j - 1]
            ap *= a
        s2 += ap * x[5]
        total += (s1 - s2 * s2 - 1.0) ** 2
    return total + x[0] * x[0]


def registry():
    """All twelve problems, in a stable order with stable names."""
    mk = ProblemSpec
    return [
        mk("pressure_vessel", 4, (1.0, 1.0, 1.0, 1.0), (100.0, 400.0, 20.0, 20.0),
           (False, False, True, True), "min", 4, 5850.37, _pressure_vessel_obj, _pressure_vessel_g),
        mk("alkylation", 7, (1500.0, 1.0, 3000.0, 85.0, 90.0, 3.0, 145.0),
           (2000.0, 120.0, 3500.0, 93.0, 95.0, 12.0, 162.0),
           (False,) * 7, "max", 14, 1772.77, _alkylation_obj, _alkylation_g),
        mk("heat_exchanger", 5, (100.0, 1000.0, 1000.0, 10.0, 10.0),
           (10000.0, 10000.0, 10000.0, 1000.0, 1000.0),
           (False,) * 5, "min", 3, 7049.25, _heat_exchanger_obj, _heat_exchanger_g),
        mk("gear_train", 4, (12.0,) * 4, (60.0,) * 4, (True,) * 4, "min", 0, 2.70e-12, _gear_train_obj),
        mk("spring", 3, (0.05, 0.25, 2.0), (2.0, 1.3, 15.0),
           (False, False, False), "min", 4, 0.0126652303, _spring_obj, _spring_g),
        mk("welded_beam", 4, (0.1,) * 4, (2.0, 10.0, 10.0, 2.0),
           (False,) * 4, "min", 7, 1.72485217, _welded_beam_obj, _welded_beam_g),
        mk("freq_mod", 6, (-6.4,) * 6, (6.35,) * 6, (False,) * 6, "min", 0, 0.0, _freq_mod_obj),
        mk("ecc", _ECC_M * _ECC_N, (0.0,) * (_ECC_M * _ECC_N), (1.0,) * (_ECC_M * _ECC_N),
           (True,) * (_ECC_M * _ECC_N), "max", 0, 0.067416, _ecc_obj),
        mk("sys_lin_eq", 10, (-9.0,) * 10, (9.0,) * 10, (False,) * 10, "min", 0, 0.0, _sys_lin_eq_obj),
        mk("rastrigin", 20, (-5.12,) * 20, (5.12,) * 20, (False,) * 20, "min", 0, 0.0, _rastrigin_obj),
        mk("griewangk", 10, (-600.0,) * 10, (600.0,) * 10, (False,) * 10, "min", 0, 0.0, _griewangk_obj),
        mk("watson", 6, (-2.0,) * 6, (2.0,) * 6, (False,) * 6, "min", 0, 2.288e-3, _watson_obj),
    ]


_BY_NAME = None


def get(name):
    """Look a problem up by its stable name."""
    global _BY_NAME
    if _BY_NAME is None:
        _BY_NAME = {p.name: p for p in registry()}
    if name not in _BY_NAME:
        raise KeyError("unknown problem %r (known: %s)" % (name, ", ".join(PROBLEM_NAMES)))
    return _BY_NAME[name]
