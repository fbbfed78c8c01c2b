"""Each counter becomes a chain of Boolean nodes. The expanded network
simulates the memory network exactly on thermometer-coded states; the
remaining states are artefacts."""
import itertools

from mbnet import (decode_phi, encode_phi, expanded_system, find_attractors,
                   is_artefact, mbn_step, mbn_to_bn)
from mbnet.core import all_bit_vectors
from mbnet.named import flip_mbn

M = flip_mbn()
emap = mbn_to_bn(M)
print("nodes:", emap.target.names)
for d in itertools.product(*(range(t + 1) for t in M.dt)):
    print(f"  {d} -> {encode_phi(emap, d)}   step {mbn_step(M, d)} -> "
          f"{encode_phi(emap, mbn_step(M, d))}")

bad = [x for x in all_bit_vectors(emap.target.n) if is_artefact(emap, x)]
print("artefacts:", bad)

full = find_attractors(expanded_system(emap, drop_artefacts=False))
print("attractors of the full expansion:",
      [[decode_phi(emap, x) for x in full.states(a)] for a in range(len(full.attractors))])
