"""cI/cro mutual inhibition: the oscillation survives only when both
proteins persist for the same number of steps."""
import numpy as np

from mbnet import DiscreteSystem, find_attractors, mbn_step
from mbnet.cases import lambda_boolean_reduction, lambda_bn, lambda_mbn

print("reduction matches the Boolean model:",
      lambda_boolean_reduction().outputs() == lambda_bn().outputs())

top = 6
table = np.zeros((top, top), dtype=int)
for a in range(1, top + 1):
    for b in range(1, top + 1):
        rep = find_attractors(DiscreteSystem.from_mbn(lambda_mbn((a, b))))
        table[a - 1, b - 1] = max((c.size for c in rep.limit_cycles), default=0)
print("cycle size by (dt_cI, dt_cro), 0 = none:")
print(table)

M = lambda_mbn((3, 3))
d = (3, 3)
path = [d]
for _ in range(4):
    d = mbn_step(M, d)
    path.append(d)
print("(3,3):", " -> ".join(map(str, path)))
