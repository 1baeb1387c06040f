import itertools
import random

import pytest

from oracles import cyclic_descents, dijkstra_nx, inside_faces
from planar_emulator.critical import (canonical_paths, classify_primary, compute_critical, equivalent,
                                      split_positions)
from planar_emulator.generators import InstanceSpec, gen_instance
from planar_emulator.preprocess import simplify


@pytest.fixture(scope="module")
def ring_stage(ring):
    si = simplify(ring)
    return si, compute_critical(si)


def test_single_face_has_no_critical_paths():
    inst = gen_instance(InstanceSpec(kind="grid-ring", width=6, height=6, f=1, k=6, seed=3))
    si = simplify(inst)
    cps = compute_critical(si)
    assert cps.segments == {}
    assert all(cps.count(t) == 0 for t in si.terminals)


def test_classify_primary_rule():
    assert classify_primary(0, 1, "a", "b") == ("a", "b")
    assert classify_primary(1, 0, "a", "b") == ("b", "a")
    for r1, r2 in [(0, 2), (3, 1)]:
        p, s = classify_primary(r1, r2, 10, 20)
        assert classify_primary(r2, r1, 10, 20) == (s, p)


def _outer_inner(si):
    ro = next(r for r, f in enumerate(si.faces) if f.is_outer)
    return ro, 1 - ro


def _oracle_splits(si, ro, q):
    """Positions ``j`` on face ``q`` whose closed curve swallows that face's hole."""
    g = si.graph
    face = si.faces[q]
    m = len(face.terminals)
    hole = si.hole_face(q)
    out = []
    for t in si.faces[ro].terminals:
        js = []
        for j in range(m):
            a, b = face.terminals[j], face.terminals[(j + 1) % m]
            cyc = si.strand(t, a).edges + [face.boundary[j]] + si.strand(t, b).edges
            if hole in inside_faces(g, cyc, g.outer_face()):
                js.append(j)
        out.append(js)
    return out


def test_ring_split_is_unique_and_clockwise(ring_stage):
    si, cps = ring_stage
    ro, q = _outer_inner(si)
    brute = _oracle_splits(si, ro, q)
    assert all(len(js) == 1 for js in brute)
    assert cyclic_descents([js[0] for js in brute]) <= 1
    assert split_positions(si, cps, ro, q) == brute


def test_ring_equivalent_neighbours(ring_stage):
    si, cps = ring_stage
    ro, q = _outer_inner(si)
    m = len(si.faces[q].terminals)
    for t in si.faces[ro].terminals:
        flags = [equivalent(si, t, q, j) for j in range(m)]
        assert flags.count(False) == 1


def test_ring_two_critical_paths_per_outer_terminal(ring_stage):
    si, cps = ring_stage
    ro, q = _outer_inner(si)
    if len(si.faces[q].terminals) >= 2:
        for t in si.faces[ro].terminals:
            assert cps.count(t) == 2


@pytest.mark.parametrize("seed", range(8))
def test_three_face_count_bound(seed):
    inst = gen_instance(InstanceSpec(kind="random-planar", width=12, height=7, f=3, k=10, seed=seed))
    si = simplify(inst)
    cps = compute_critical(si)
    for t in si.terminals:
        assert 1 <= cps.count(t) <= 8 * 3 - 4
        for r in range(3):
            if r != si.face_index()[t]:
                assert cps.segments[(t, r)]


def test_three_face_non_equivalence_when_region_holds_a_face():
    # brute force every position on every foreign face against the dual oracle
    inst = gen_instance(InstanceSpec(kind="grid-ring", width=12, height=7, f=3, k=9, seed=5))
    si = simplify(inst)
    g = si.graph
    holes = [si.hole_face(r) for r in range(len(si.faces))]
    fi = si.face_index()
    for t in si.terminals:
        for r, face in enumerate(si.faces):
            if r == fi[t]:
                continue
            ts, bnd = si.walk_order(r)
            m = len(ts)
            for j in range(m if m > 1 else 0):
                cyc = si.strand(t, ts[j]).edges + [bnd[j]] + si.strand(ts[(j + 1) % m], t).edges
                region = inside_faces(g, cyc, holes[r])
                expect = not any(h in region for q, h in enumerate(holes) if q != r)
                assert equivalent(si, t, r, j) == expect


def test_canonical_paths_are_walks_no_shorter_than_distance(ring_stage):
    si, cps = ring_stage
    cans = canonical_paths(si, cps)
    fi = si.face_index()
    inter = [(a, b) for a, b in itertools.combinations(si.terminals, 2) if fi[a] != fi[b]]
    assert len(cans) == len(inter)
    for (a, b), cp in cans.items():
        g = si.graph
        cur = a
        for v, e in zip(cp.vertices[1:], cp.edges):
            assert g.edges[e].other(cur) == v
            cur = v
        assert cp.vertices[0] == a and cp.vertices[-1] == b
        assert len(set(cp.vertices)) == len(cp.vertices)
        length = sum(g.edges[e].w for e in cp.edges)
        assert length >= dijkstra_nx(g, a)[b] == si.distances[(a, b)]


def test_degenerate_bend_is_the_primary_itself():
    rng = random.Random(0)
    seen = 0
    for _ in range(10):
        inst = gen_instance(InstanceSpec(kind="random-planar", width=9, height=7, f=2, k=7, seed=rng.randint(0, 9999)))
        si = simplify(inst)
        cps = compute_critical(si)
        for (a, b), cp in canonical_paths(si, cps).items():
            if cp.bend == b:
                seen += 1
                assert cp.vertices == cp.first.vertices
            elif cp.bend == a:
                seen += 1
                assert cp.vertices == cp.second.vertices[::-1]
            else:
                assert cp.bend in cp.first.vertices and cp.bend in cp.second.vertices
    assert seen > 0


@pytest.mark.parametrize("seed", range(10))
def test_two_face_splits_brute_force(seed):
    kind = ["grid-ring", "random-planar"][seed % 2]
    inst = gen_instance(InstanceSpec(kind=kind, width=9, height=8, f=2, k=4 + seed % 6, seed=300 + seed))
    si = simplify(inst)
    cps = compute_critical(si)
    ro, q = _outer_inner(si)
    brute = _oracle_splits(si, ro, q)
    assert all(len(js) == 1 for js in brute)
    assert cyclic_descents([js[0] for js in brute]) <= 1
    assert split_positions(si, cps, ro, q) == brute
