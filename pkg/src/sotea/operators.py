"""Search operators and genome repair.

Seven operators over real-vector genomes, each producing one child from two
(or, for differential evolution, three) parents. Children are repaired into
the feasible box afterwards: coordinates are clamped to their bounds and
integer coordinates rounded half away from zero, then re-clamped.

Operator parameterizations are fixed here: Wright's heuristic crossover
draws a single r ~ U(0,1); extended line crossover uses alpha ~ U(-0.25,
1.25); BLX uses alpha = 0.5; differential evolution uses F = 0.8. `rng` is
a numpy Generator.
"""

import numpy as np

__all__ = ["OPERATOR_NAMES", "create_offspring", "repair", "pick_operator"]

OPERATOR_NAMES = (
    "wrights_heuristic_xover",
    "simple_xover",
    "extended_line_xover",
    "uniform_xover",
    "blx_alpha",
    "differential_evolution",
    "single_point_mutation",
)

BLX_ALPHA = 0.5
DE_F = 0.8
LINE_LO, LINE_HI = -0.25, 1.25


def repair(x, lower, upper, integer):
    """Clamp into [lower, upper]; round integer coordinates (half away
    from zero) and re-clamp."""
    out = np.clip(np.asarray(x, dtype=float), lower, upper)
    if integer.any():
        xi = out[integer]
        out[integer] = np.clip(np.copysign(np.floor(np.abs(xi) + 0.5), xi), lower[integer], upper[integer])
    return out


def create_offspring(op, p1, p2, lower, upper, integer, rng, p3=None, p1_better=True):
    """One repaired child from parents via the named operator.

    p3 is the extra donor for differential evolution (required there,
    ignored elsewhere). p1_better tells Wright's heuristic crossover which
    parent the caller's fitness comparison preferred.
    """
    d = p1.size
    if op == "wrights_heuristic_xover":
        b, w = (p1, p2) if p1_better else (p2, p1)
        child = rng.random() * (b - w) + b
    elif op == "simple_xover":
        cut = int(rng.integers(1, d)) if d > 1 else 1
        child = np.concatenate((p1[:cut], p2[cut:]))
    elif op == "extended_line_xover":
        alpha = rng.uniform(LINE_LO, LINE_HI)
        child = p1 + alpha * (p2 - p1)
    elif op == "uniform_xover":
        mask = rng.random(d) < 0.5
        child = np.where(mask, p1, p2)
    elif op == "blx_alpha":
        lo = np.minimum(p1, p2)
        hi = np.maximum(p1, p2)
        span = hi - lo
        child = rng.random(d) * (span * (1.0 + 2.0 * BLX_ALPHA)) + (lo - BLX_ALPHA * span)
    elif op == "differential_evolution":
        if p3 is None:
            raise ValueError("differential_evolution needs a third parent")
        child = p1 + DE_F * (p2 - p3)
    elif op == "single_point_mutation":
        child = p1.copy()
        j = int(rng.integers(d))
        child[j] = rng.uniform(lower[j], upper[j])
    else:
        raise ValueError("unknown operator %r" % (op,))
    return repair(child, lower, upper, integer)


def pick_operator(mode, rng):
    """Operator name for one mating: uniform over the seven, or the
    0.95/0.05 uniform-crossover/mutation mix. `rng` is random.Random."""
    if mode == "seven":
        return OPERATOR_NAMES[rng.randrange(7)]
    if mode == "two":
        return "uniform_xover" if rng.random() < 0.95 else "single_point_mutation"
    raise ValueError("unknown operator mode %r" % (mode,))
