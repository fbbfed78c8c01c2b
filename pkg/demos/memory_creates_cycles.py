"""A two-node network whose only attractor is a fixed point gains a limit
cycle once the first node keeps firing for two steps."""
from mbnet import DiscreteSystem, MemoryNetwork, find_attractors, trajectory
from mbnet.named import flip_bn


def show(rep):
    for a in range(len(rep.attractors)):
        kind = "fixed point" if rep.attractors[a].size == 1 else "limit cycle"
        print(f"  {kind:12s} {rep.states(a)}  basin {int(rep.basin_sizes[a])}")


F = flip_bn()
print("unit delays:")
show(find_attractors(DiscreteSystem.from_bn(F)))

M = MemoryNetwork(F, (2, 1))
print("delays (2, 1):")
rep = find_attractors(DiscreteSystem.from_mbn(M))
show(rep)

sys = rep.system
tr = trajectory(sys, sys.encode((2, 0)))
print("from (2,0):", " -> ".join(sys.label(k) for k in tr.closed_path))
