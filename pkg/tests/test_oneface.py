import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import dijkstra_nx
from planar_emulator.errors import LPInfeasible
from planar_emulator.generators import InstanceSpec, gen_instance
from planar_emulator.graph_core import all_terminal_distances
from planar_emulator.oneface import build_quarter_grid, oneface_emulator


def _emulated(em, terminals):
    out = {}
    for s in terminals:
        ref = dijkstra_nx(em.graph, em.terminal_map[s])
        for t in terminals:
            if s != t:
                out[(s, t)] = ref[em.terminal_map[t]]
    return out


@pytest.mark.parametrize("m", [1, 2, 3, 5, 8])
def test_quarter_grid_size_and_faces(m):
    qg = build_quarter_grid(m)
    g = qg.graph
    assert len(g.vertices) == m + m * (m - 1) // 2
    assert g.euler_ok()
    if m >= 2:
        # every terminal sits on one common face
        outer = g.face_of_dart(0, g.rotation[0][0])
        assert set(range(m)) <= set(g.face_vertices(outer))
        assert len(qg.paths) == m * (m - 1) // 2


def test_two_terminals():
    em = oneface_emulator([10, 20], {(10, 20): 7})
    assert _emulated(em, [10, 20]) == {(10, 20): 7, (20, 10): 7}
    assert len(em.graph.vertices) == 3


def test_three_terminals():
    targets = {("a", "b"): 3, ("b", "c"): 4, ("a", "c"): 5}
    em = oneface_emulator(["a", "b", "c"], targets)
    got = _emulated(em, ["a", "b", "c"])
    for (s, t), v in targets.items():
        assert got[(s, t)] == got[(t, s)] == v


def test_missing_target_is_reported():
    with pytest.raises(KeyError):
        oneface_emulator([0, 1, 2], {(0, 1): 1, (1, 2): 1})


def test_non_metric_targets_are_infeasible():
    # 0-2 longer than going through 1: no graph can realise it
    with pytest.raises(LPInfeasible):
        oneface_emulator([0, 1, 2], {(0, 1): 1, (1, 2): 1, (0, 2): 5}, engine="exact")


def _face_metric(m, seed):
    inst = gen_instance(InstanceSpec(kind="random-planar", width=max(5, m + 1), height=5, f=1, k=m, seed=seed))
    return inst.faces[0].terminals, all_terminal_distances(inst)


@pytest.mark.parametrize("m", range(2, 9))
def test_face_metrics_are_reproduced(m):
    terms, d = _face_metric(m, 100 + m)
    em = oneface_emulator(terms, d)
    assert _emulated(em, terms) == {p: d[p] for p in itertools.permutations(terms, 2)}
    assert all(w >= 0 for w in (e.w for e in em.graph.edges.values()))


@settings(max_examples=10)
@given(st.integers(2, 6), st.integers(0, 10 ** 5))
def test_face_metrics_random(m, seed):
    terms, d = _face_metric(m, seed)
    em = oneface_emulator(terms, d)
    got = _emulated(em, terms)
    assert all(got[p] == Fraction(d[p]) for p in itertools.permutations(terms, 2))
