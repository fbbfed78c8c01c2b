"""The thirteen acceptance criteria, each at its stated tolerance.

Every test prints one ``criterion N PASS|FAIL: ...`` line before asserting,
so ``pytest -s tests/test_acceptance.py`` (or ``python tests/test_acceptance.py``)
reads as a checklist.
"""
import json
import time
import tracemalloc

import numpy as np
import pydot
import pytest

from mbnet import (DiscreteSystem, MemoryNetwork, bn_step,
                   expanded_system, find_attractors, gpbn_step, gpbn_to_mbn, load_network,
                   mbn_step, mbn_to_bn, save_network)
from mbnet.cases import (abc_fixed_points, arabidopsis_abc, arabidopsis_c2, lambda_bn,
                         lambda_discrete_step, lambda_mbn, predict_c2, predict_lambda)
from mbnet.named import disjunctive_chain, flip_bn, flip_gpbn, flip_mbn
from mbnet.netio import export_dot, report_json, to_document
from mbnet.size2 import (CATALOGUE, CLASS_IDS, NUMBER_THEORETIC, cross_validate, predict, rule,
                         rules_of, validate_class)

import netgen
from test_cases import LAMBDA_BOOL_ROWS, LAMBDA_DISCRETE_ROWS
from test_core import FLIP_BN_ROWS, FLIP_GPBN_ROWS, FLIP_MBN_ROWS, gp
from test_size2 import FIXED_ONLY_00, TABLES, WITH_CYCLE_00
from test_transforms import FLIP_EXPANDED_ROWS


@pytest.fixture
def verdict(capsys):
    def say(n: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\ncriterion {n} {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail
    return say


def kinds(rep):
    return sorted(c.size > 1 for c in rep.attractors)


def test_criterion_01_fixture_rows(verdict):
    t = time.perf_counter()
    bad = []
    bad += [x for x, y in FLIP_BN_ROWS if bn_step(flip_bn(), x) != y]
    bad += [s for s, u in FLIP_GPBN_ROWS if gpbn_step(flip_gpbn(), gp(s)) != gp(u)]
    bad += [d for d, e in FLIP_MBN_ROWS if mbn_step(flip_mbn(), d) != e]
    expanded = mbn_to_bn(flip_mbn()).target
    bad += [x for x, y in FLIP_EXPANDED_ROWS if bn_step(expanded, x) != y]
    bad += [x for x, y in LAMBDA_DISCRETE_ROWS if lambda_discrete_step(*x) != y]
    bad += [x for x, y in LAMBDA_BOOL_ROWS if bn_step(lambda_bn(), x) != y]
    dt = time.perf_counter() - t
    rows = sum(map(len, (FLIP_BN_ROWS, FLIP_GPBN_ROWS, FLIP_MBN_ROWS, FLIP_EXPANDED_ROWS,
                         LAMBDA_DISCRETE_ROWS, LAMBDA_BOOL_ROWS)))
    verdict(1, rows == 52 and not bad and dt < 1,
            f"{rows} fixture rows, {len(bad)} wrong, {dt * 1000:.1f} ms")


def test_criterion_02_disjunctive_chain(verdict):
    bn = find_attractors(DiscreteSystem.from_bn(disjunctive_chain())).attractor_sets()
    mbn = find_attractors(DiscreteSystem.from_mbn(MemoryNetwork(disjunctive_chain(), (2, 1, 1))))
    want_bn = {frozenset({(0, 0, 0)}), frozenset({(1, 1, 1)}), frozenset({(0, 1, 0), (1, 0, 1)})}
    want_mbn = {frozenset({(0, 0, 0)}), frozenset({(2, 1, 1)})}
    ok = bn == want_bn and mbn.attractor_sets() == want_mbn
    verdict(2, ok, f"BN {len(bn)} attractors, MBN(2,1,1) {len(mbn.attractors)} fixed points")


def test_criterion_03_enumeration(verdict):
    sizes = {c: len(CATALOGUE[c]) for c in CLASS_IDS}
    want = {1: 27, 2: 9, 3: 3, 4: 1}
    size_ok = all(n == want[len(c)] for c, n in sizes.items())
    counts = [sum(1 for c in CLASS_IDS if len(c) == k) for k in (1, 2, 3, 4)]
    tables_ok = all(" ".join(rule(r).outputs()) == t for r, t in TABLES.items())
    fixed, cyc = [], []
    for r in rules_of("00"):
        rep = find_attractors(DiscreteSystem.from_bn(rule(r)))
        (cyc if rep.limit_cycles else fixed).append(r.k)
    split_ok = fixed == FIXED_ONLY_00 and cyc == WITH_CYCLE_00
    verdict(3, size_ok and counts == [1, 6, 4, 1] and tables_ok and split_ok,
            f"group sizes {sorted(set(sizes.values()))}, {len(TABLES)} tables bit-exact={tables_ok}, "
            f"FP[00]={len(fixed)} LC[00]={len(cyc)}")


def test_criterion_04_class_00_cross_validation(verdict):
    t = time.perf_counter()
    rep = cross_validate([("00",)], 6, 6)
    dt = time.perf_counter() - t
    meta = rep.metadata()
    backed = {m.rule for m in rep.mismatches} - {f"[{k},00]" for k in NUMBER_THEORETIC}
    meta_ok = (meta["number_theoretic_rules"] == [f"[{k},00]" for k in sorted(NUMBER_THEORETIC)]
               and meta["mismatches"] == len(rep.mismatches))
    verdict(4, not backed and meta_ok and dt < 10,
            f"{sum(rep.checked.values())} configurations, {len(rep.mismatches)} mismatches "
            f"({len(backed)} outside the number-theoretic rules), {dt:.2f} s")


def test_criterion_05_multi_fixed_point_predictors(verdict):
    bad = {}
    for cls in CLASS_IDS:
        if len(cls) in (2, 3):
            rep = validate_class(cls, 5, 5)
            if not rep.ok:
                bad[",".join(cls)] = len(rep.mismatches)
    ex = (predict("[5,00,11]", 1, 1).limit_cycle
          and not any(predict("[5,00,11]", a, b).limit_cycle
                      for a in range(1, 6) for b in range(1, 6) if (a, b) != (1, 1))
          and all(predict("[7,01,10]", a, b).limit_cycle == (a == b)
                  for a in range(1, 6) for b in range(1, 6))
          and all(predict("[4,01,11]", a, b).limit_cycle for a in range(1, 6) for b in range(1, 6)))
    verdict(5, not bad and ex, f"10 classes on a 5x5 grid, mismatching classes {bad or 'none'}")


def test_criterion_06_simulation_homomorphism(verdict):
    rng = np.random.default_rng(6)
    hom_bad = type_bad = states = 0
    for _ in range(1000):
        M = netgen.random_mbn(rng, 4, 4)
        emap = mbn_to_bn(M)
        phi = netgen.phi_indices(M, emap)
        sm = DiscreteSystem.from_mbn(M).successor_array()
        sb = DiscreteSystem.from_bn(emap.target).successor_array()
        hom_bad += not np.array_equal(phi[sm], sb[phi])
        states += M.state_count
        a = find_attractors(DiscreteSystem.from_mbn(M))
        b = find_attractors(expanded_system(emap))
        type_bad += kinds(a) != kinds(b)
    verdict(6, hom_bad == 0 and type_bad == 0,
            f"1000 MBNs, {states} states, {hom_bad} homomorphism and {type_bad} type mismatches")


def test_criterion_07_gpbn_reduction(verdict):
    rng = np.random.default_rng(2024)
    bad = []
    for i in range(200):
        Gp = netgen.random_gpbn(rng, 3, 3)
        a = find_attractors(DiscreteSystem.from_gpbn(Gp))
        b = find_attractors(DiscreteSystem.from_mbn(gpbn_to_mbn(Gp)))
        if kinds(a) != kinds(b):
            bad.append(i)
    verdict(7, not bad, f"200 GPBNs, {len(bad)} with a different attractor count or type "
                        "(extra gene/protein phase cycles in the GPBN)")


def test_criterion_08_positive_disjunctive(verdict):
    rng = np.random.default_rng(8)
    bad = 0
    for _ in range(200):
        n = int(rng.integers(1, 6))
        F = netgen.disjunctive_strongly_connected(rng, n)
        dt = list(netgen.random_dt(rng, n, 3))
        dt[int(rng.integers(n))] = int(rng.integers(2, 4))
        got = find_attractors(DiscreteSystem.from_mbn(MemoryNetwork(F, tuple(dt)))).attractor_sets()
        bad += not got <= {frozenset({(0,) * n}), frozenset({tuple(dt)})}
    witness = bool(find_attractors(DiscreteSystem.from_bn(disjunctive_chain())).limit_cycles)
    verdict(8, bad == 0 and witness,
            f"200 networks, {bad} outside {{0, dt}}; unit-delay chain has a cycle: {witness}")


def test_criterion_09_acyclic_and_monotone(verdict):
    rng = np.random.default_rng(9)
    cyc = over = 0
    for _ in range(200):
        n = int(rng.integers(1, 6))
        F = netgen.acyclic_with_positive_loops(rng, n)
        dt = netgen.random_dt(rng, n, 3)
        rep = find_attractors(DiscreteSystem.from_mbn(MemoryNetwork(F, dt)))
        cyc += bool(rep.limit_cycles)
        over += rep.max_transient > netgen.layer_bound(F, dt)
    mono = 0
    for kind in ("decreasing", "increasing"):
        for _ in range(200):
            n = int(rng.integers(1, 5))
            F = netgen.monotone_in_self(rng, n, kind)
            dt = netgen.random_dt(rng, n, 3)
            mono += bool(find_attractors(DiscreteSystem.from_mbn(MemoryNetwork(F, dt))).limit_cycles)
    verdict(9, cyc == over == mono == 0,
            f"acyclic: {cyc} cycles, {over} over the layer bound; monotone: {mono} cycles")


def test_criterion_10_lambda(verdict):
    bad, sizes = [], {}
    for a in range(1, 9):
        for b in range(1, 9):
            rep = find_attractors(DiscreteSystem.from_mbn(lambda_mbn((a, b))))
            pred = predict_lambda(a, b)
            if (rep.decoded_fixed_points() != {(a, 0), (0, b)}
                    or bool(rep.limit_cycles) != (a == b) or pred.limit_cycle != (a == b)):
                bad.append((a, b))
            if rep.limit_cycles:
                sizes[a] = [c.size for c in rep.limit_cycles]
    conv = all(s == [a + 1] for a, s in sizes.items())
    verdict(10, not bad and conv and len(sizes) == 8,
            f"64 delay pairs, {len(bad)} wrong; cycle sizes dt+1 (stated length: dt): {conv}")


def test_criterion_11_arabidopsis(verdict):
    bad = []
    for a in range(1, 6):
        for b in range(1, 6):
            for c in range(1, 6):
                dt = (a, b, c)
                rep = find_attractors(DiscreteSystem.from_mbn(MemoryNetwork(arabidopsis_c2(), dt)))
                pred = predict_c2(*dt)
                lengths = [x.size for x in rep.limit_cycles]
                third = b == 1 and (a == 1 or c == 1)
                ok = (rep.decoded_fixed_points() == {(0, 0, 0), dt}
                      and set(pred.fixed_points) == {(0, 0, 0), dt}
                      and pred.limit_cycle == third
                      and (lengths == [2] if third else not lengths))
                if not ok:
                    bad.append(dt)
    abc_bad = 0
    rng = np.random.default_rng(11)
    for _ in range(20):
        dt = netgen.random_dt(rng, 5, 3)
        rep = find_attractors(DiscreteSystem.from_mbn(MemoryNetwork(arabidopsis_abc(), dt)))
        abc_bad += rep.decoded_fixed_points() != set(abc_fixed_points(dt))
    verdict(11, not bad and abc_bad == 0,
            f"125 C2 delay vectors, {len(bad)} wrong; 20 five-node products, {abc_bad} wrong")


def _random_document(rng):
    n = int(rng.integers(1, 5))
    kind = ["bn", "mbn", "gpbn"][int(rng.integers(3))]
    names = [f"g{i}" for i in range(n)]
    nodes = []
    for i in range(n):
        if rng.random() < 0.5:
            rule_ = "".join(str(int(b)) for b in rng.integers(0, 2, size=1 << n))
        else:
            a, b = rng.choice(names, 2)
            op = ["&", "|", "^"][int(rng.integers(3))]
            rule_ = f"{'!' if rng.random() < 0.5 else ''}{a} {op} {b}"
        nodes.append({"name": names[i], "rule": rule_})
    doc = {"model": kind, "nodes": nodes}
    if kind != "bn":
        doc["delays"] = [int(v) for v in rng.integers(1, 5, size=n)]
    return json.dumps(doc)


def test_criterion_12_io(verdict):
    rng = np.random.default_rng(12)
    bad = 0
    for _ in range(100):
        m1 = load_network(_random_document(rng))
        m2 = load_network(save_network(m1))
        d1, d2 = to_document(m1), to_document(m2)
        bad += (type(m1) is not type(m2) or d1.rules != d2.rules or d1.delays != d2.delays)
    (g,) = pydot.graph_from_dot_data(export_dot(DiscreteSystem.from_mbn(flip_mbn())))
    nodes, edges = len(g.get_nodes()), len(g.get_edges())
    verdict(12, bad == 0 and nodes == 6 and edges == 6,
            f"100 documents, {bad} round-trip differences; DOT {nodes} nodes / {edges} edges")


@pytest.mark.slow
def test_criterion_13_performance(verdict):
    rng = np.random.default_rng(13)
    M = MemoryNetwork(netgen.random_bn(rng, 12), (3,) * 12)
    assert M.state_count == 1 << 24
    find_attractors(DiscreteSystem.from_mbn(flip_mbn()))  # compile outside the clock
    tracemalloc.start()
    t = time.perf_counter()
    rep1 = find_attractors(DiscreteSystem.from_mbn(M))
    wall = time.perf_counter() - t
    _, peak = tracemalloc.get_traced_memory()
    tracemalloc.stop()
    out1 = json.dumps(report_json(rep1)).encode()
    del rep1
    rep4 = find_attractors(DiscreteSystem.from_mbn(M), threads=4)
    out4 = json.dumps(report_json(rep4)).encode()
    per_state = peak / M.state_count
    verdict(13, wall < 30 and per_state <= 12.5 and out1 == out4,
            f"2^24 states in {wall:.1f} s, {per_state:.2f} B/state peak, "
            f"threads=4 identical: {out1 == out4}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
