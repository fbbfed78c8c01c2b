"""The two strongly connected parts of the floral organ network, and
the four fixed points of their product."""
from mbnet import DiscreteSystem, MemoryNetwork, find_attractors
from mbnet.cases import abc_fixed_points, arabidopsis_abc, arabidopsis_c2, predict_c2

for dt in [(1, 2, 1), (2, 1, 2), (1, 1, 2)]:
    rep = find_attractors(DiscreteSystem.from_mbn(MemoryNetwork(arabidopsis_c2(), dt)))
    print(dt, predict_c2(*dt).anchor, "| cycles:",
          [rep.states(a) for a, c in enumerate(rep.attractors) if c.size > 1] or "none")

dt = (2, 3, 1, 2, 2)
rep = find_attractors(DiscreteSystem.from_mbn(MemoryNetwork(arabidopsis_abc(), dt)))
print("AG AP1 AP3 BFU PI at", dt)
print("  observed :", sorted(rep.decoded_fixed_points()))
print("  predicted:", sorted(abc_fixed_points(dt)))
