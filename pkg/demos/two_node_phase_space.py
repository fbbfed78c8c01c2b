"""Delay phase space of the two-node networks with the single fixed point 00.

For every rule, every delay pair up to 6 and every initial counter, the
closed-form classifier is compared with exhaustive simulation.
"""
import numpy as np

from mbnet.size2 import FP, classify, cross_validate, delay_phase_space, rule

rep = cross_validate([("00",)], 6, 6)
print(f"{len(rep.rules)} rules, {sum(rep.checked.values())} configurations, "
      f"{len(rep.mismatches)} mismatches")

# which (alpha, beta) let [9,00] cycle from some initial counters
grid = np.zeros((6, 6), dtype=int)
for a in range(1, 7):
    for b in range(1, 7):
        grid[a - 1, b - 1] = sum(classify("[9,00]", a, b, r, g) != FP
                                 for r in range(a + 1) for g in range(b + 1))
print("[9,00], initial counters reaching a cycle, rows alpha=1..6, columns beta=1..6:")
print(grid)

for cell in delay_phase_space(rule("[16,00]"), 3, 3):
    print(cell.dt, "cycles:", cell.cycle_lengths or "-", "basins:", cell.basin_sizes)
