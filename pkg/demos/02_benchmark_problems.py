"""Tour of the benchmark suite.

Lists the twelve problems and re-evaluates each published best solution,
showing the raw objective and any constraint violations left over from the
rounding of the printed vectors.
"""

from sotea import problems

BEST_VECTORS = {
    "pressure_vessel": (38.8601, 221.365, 12, 6),
    "alkylation": (1698.18, 53.66, 3031.3, 90.11, 95, 10.5, 153.53),
    "heat_exchanger": (579.19, 1360.13, 5109.92, 182.01, 295.60),
    "gear_train": (19, 16, 43, 49),
    "spring": (0.051689, 0.356732, 11.2881),
    "welded_beam": (0.205729, 3.47051, 9.03662, 0.2057296),
    "freq_mod": (1.0, 5.0, 1.5, 4.8, 2.0, 4.9),
    "sys_lin_eq": (1.0,) * 10,
    "rastrigin": (0.0,) * 20,
    "griewangk": (0.0,) * 10,
}

print("%-16s %-4s %-4s %-5s %-12s" % ("name", "dim", "sns", "cons", "best_known"))
for p in problems.registry():
    print("%-16s %-4d %-4s %-5d %-12g" % (p.name, p.dim, p.sense, p.n_constraints,
                                          p.best_known))

print()
print("re-evaluating published best vectors:")
for name, vec in BEST_VECTORS.items():
    p = problems.get(name)
    ev = p.evaluate(vec)
    viols = ["%.3g" % v for v in ev.violations if v > 0]
    print("  %-16s F = %-16.10g %s" % (
        name, ev.objective,
        "feasible" if not viols else "rounding residue in g: %s" % viols))

print()
print("the reported objective matches the published value to the printed")
print("precision of the tables; tiny constraint residues are what is left")
print("of the active constraints after the vectors were rounded for print")
