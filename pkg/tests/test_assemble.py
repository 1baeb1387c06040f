import pytest

from oracles import dijkstra_nx
from planar_emulator.assemble import build, glue
from planar_emulator.errors import OrderMismatch
from planar_emulator.generators import InstanceSpec, gen_instance
from planar_emulator.graph_core import all_terminal_distances
from planar_emulator.oneface import oneface_emulator


def _exact(inst, em):
    d = all_terminal_distances(inst)
    for s in inst.terminals:
        ref = dijkstra_nx(em.graph, em.terminal_map[s])
        for t in inst.terminals:
            if s != t and ref[em.terminal_map[t]] != d[(s, t)]:
                return False
    return True


def test_single_face_build_is_the_quarter_grid():
    inst = gen_instance(InstanceSpec(kind="random-planar", width=7, height=6, f=1, k=6, seed=2))
    res = build(inst)
    part = oneface_emulator(inst.faces[0].terminals, all_terminal_distances(inst))
    assert len(res.emulator.graph.vertices) == len(part.graph.vertices) == 6 + 15
    assert len(res.emulator.graph.edges) == len(part.graph.edges)
    assert sorted(e.w for e in res.emulator.graph.edges.values()) == sorted(e.w for e in part.graph.edges.values())
    assert _exact(inst, res.emulator)


def _vertex_formula(res):
    k_r = [len(f.terminals) for f in res.simplified.faces]
    return len(res.skeleton.graph.vertices) + sum(len(p.graph.vertices) - k for p, k in zip(res.parts, k_r))


def test_ring_build(ring, ring_build):
    em = ring_build.emulator
    assert em.graph.euler_ok()
    assert _exact(ring, em)
    assert len(em.graph.vertices) == _vertex_formula(ring_build)
    assert all(e.w >= 0 for e in em.graph.edges.values())
    kinds = {p.split()[0] for p in em.provenance.values()}
    assert kinds <= {"hstar", "oneface"}
    # the face cycles of the skeleton are gone
    assert not set(em.graph.edges) & {e for b in ring_build.skeleton.boundary for e in b}


@pytest.mark.parametrize("seed", range(5))
def test_random_builds_are_exact(seed):
    f = 2 + seed % 2
    inst = gen_instance(InstanceSpec(kind=["grid-ring", "random-planar"][seed % 2], width=12, height=8,
                                     f=f, k=7 + seed, seed=70 + seed))
    res = build(inst, seed=seed)
    assert res.emulator.graph.euler_ok()
    assert _exact(inst, res.emulator)
    assert len(res.emulator.graph.vertices) == _vertex_formula(res)


def test_each_part_keeps_its_own_vertices(ring_build):
    em = ring_build.emulator
    for r, face in enumerate(ring_build.simplified.faces):
        inside = {v for e, p in em.provenance.items() if p == f"oneface {r}"
                  for v in (em.graph.edges[e].u, em.graph.edges[e].v)}
        assert set(face.terminals) <= inside or len(face.terminals) < 2
        assert len(inside - set(face.terminals)) == len(ring_build.parts[r].graph.vertices) - len(face.terminals)


def test_glue_rejects_parts_for_wrong_terminals(ring_build):
    parts = list(ring_build.parts)
    faces = [list(f.terminals) for f in ring_build.simplified.faces]
    parts[0], parts[1] = parts[1], parts[0]
    with pytest.raises(OrderMismatch):
        glue(ring_build.hstar, faces, ring_build.skeleton.boundary, parts)


def test_build_is_deterministic(ring):
    a, b = build(ring, seed=3), build(ring, seed=3)
    ea, eb = a.emulator.graph.edges, b.emulator.graph.edges
    assert sorted((e.u, e.v, e.w) for e in ea.values()) == sorted((e.u, e.v, e.w) for e in eb.values())


def test_events_are_recorded(ring):
    events = []
    build(ring, events=events)
    stages = [e["stage"] for e in events if e["event"] == "stage"]
    assert stages == ["preprocess", "critical", "skeleton", "weights", "oneface", "glue"]
    assert sum(e["event"] == "reroute" for e in events) == 0
