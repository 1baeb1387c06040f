import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import brute_distance, dijkstra_nx, embed, grid, inside_faces
from planar_emulator.errors import InconsistentRotation, InputError, NotClosed, Unreachable
from planar_emulator.generators import InstanceSpec, gen_instance
from planar_emulator.graph_core import (Edge, PlanarGraph, all_terminal_distances, enclosed_faces,
                                        format_weight, instance_from_walks, parse_weight, paths_from,
                                        shortest_path)


def test_triangle_has_two_faces():
    g = embed({0: (0, 0), 1: (1, 0), 2: (0, 1)}, [(0, 1), (1, 2), (2, 0)])
    assert len(g.faces()) == 2
    assert g.euler_ok()


def test_k4_has_four_faces():
    coords = {0: (0, 0), 1: (4, 0), 2: (2, 4), 3: (2, 1)}
    g = embed(coords, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)])
    assert len(g.faces()) == 4
    assert len(g.vertices) - len(g.edges) + len(g.faces()) == 2


def test_3x3_grid_has_five_faces():
    coords, edges = grid(3, 3)
    g = embed(coords, edges)
    assert len(g.faces()) == 5
    assert sorted(len(f) for f in g.faces()) == [4, 4, 4, 4, 8]


def test_every_dart_in_exactly_one_face():
    coords, edges = grid(4, 3)
    g = embed(coords, edges)
    darts = [d for f in g.faces() for d in f]
    assert len(darts) == len(set(darts)) == 2 * len(g.edges)


def test_missing_rotation_entry_is_rejected():
    with pytest.raises(InconsistentRotation):
        PlanarGraph([0, 1], [Edge(0, 0, 1, 1)], {0: [0], 1: []})


def test_rotation_listing_foreign_edge_is_rejected():
    edges = [Edge(0, 0, 1, 1), Edge(1, 1, 2, 1)]
    with pytest.raises(InconsistentRotation):
        PlanarGraph([0, 1, 2], edges, {0: [0, 1], 1: [0, 1], 2: [1]})


@pytest.mark.parametrize("w", [0, -1, "0", "-3/4", "abc", "1/0", True, 1.5])
def test_bad_weights_rejected(w):
    with pytest.raises(InputError):
        parse_weight(w)


def test_weight_strings():
    assert parse_weight("3/6") == Fraction(1, 2)
    assert parse_weight("2.25") == Fraction(9, 4)
    assert parse_weight(7) == 7
    assert format_weight(Fraction(9, 4)) == "9/4"
    assert format_weight(Fraction(4)) == "4"


@given(st.fractions(min_value=Fraction(1, 1000), max_value=1000))
def test_weight_format_round_trip(x):
    assert parse_weight(format_weight(x)) == x


def _grid_with_outer(w, h):
    coords, edges = grid(w, h)
    g = embed(coords, edges)
    # the only face with more than four darts is the outer one
    outer = max(range(len(g.faces())), key=lambda i: len(g.faces()[i]))
    g.outer_dart = g.faces()[outer][0]
    return g


def test_enclosed_single_cell():
    g = _grid_with_outer(3, 3)
    coords, edges = grid(3, 3)
    ids = {frozenset(e): i for i, e in enumerate(edges)}
    cell = [ids[frozenset(p)] for p in [(0, 1), (1, 4), (4, 3), (3, 0)]]
    inside = enclosed_faces(g, cell)
    assert len(inside) == 1
    (fid,) = inside
    assert sorted(g.face_vertices(fid)) == [0, 1, 3, 4]


def test_enclosed_whole_interior():
    g = _grid_with_outer(3, 3)
    outer = g.outer_face()
    inside = enclosed_faces(g, g.face_edges(outer))
    assert inside == set(range(len(g.faces()))) - {outer}
    assert len(inside) == 4


def test_open_walk_is_not_closed():
    g = _grid_with_outer(3, 3)
    with pytest.raises(NotClosed):
        enclosed_faces(g, [0, 1])


def test_enclosed_matches_oracle_on_random_cycles():
    rng = random.Random(3)
    for _ in range(20):
        inst = gen_instance(InstanceSpec(kind="random-planar", width=6, height=6, f=2, k=4, seed=rng.randint(0, 999)))
        g = inst.graph
        for fid in range(len(g.faces())):
            cyc = g.face_edges(fid)
            if len(set(cyc)) != len(cyc):
                continue
            assert enclosed_faces(g, cyc) == inside_faces(g, cyc, g.outer_face())


def test_ring_outer_terminal_cycle_encloses_inner_face(ring):
    g = ring.graph
    inner = next(f for f in ring.faces if not f.is_outer)
    hole = g.face_of_dart(inner.terminals[0], inner.corners[inner.terminals[0]])
    assert hole in enclosed_faces(g, g.face_edges(g.outer_face()))
    cell = next(i for i, f in enumerate(g.faces()) if len(f) <= 4 and i != hole)
    assert enclosed_faces(g, g.face_edges(cell)) == {cell}


def test_path_graph_shortest_path():
    g = embed({0: (0, 0), 1: (1, 0), 2: (2, 0)}, [(0, 1), (1, 2)])
    p = shortest_path(g, 0, 2)
    assert p.vertices == [0, 1, 2]
    assert p.length == 2


def test_four_cycle_takes_short_side():
    coords = {0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1)}
    g = embed(coords, [(0, 1), (1, 2), (2, 3), (3, 0)], weights=[1, 1, 1, 10])
    p = shortest_path(g, 0, 3)
    assert p.vertices == [0, 1, 2, 3]
    assert p.length == 3


def test_unreachable():
    g = embed({0: (0, 0), 1: (1, 0), 2: (5, 5), 3: (6, 5)}, [(0, 1), (2, 3)])
    with pytest.raises(Unreachable):
        shortest_path(g, 0, 3)


def test_grid_corner_to_corner_is_monotone_and_consistent():
    coords, edges = grid(4, 4)
    g = embed(coords, edges)
    p = shortest_path(g, 0, 15)
    assert p.length == 6 == brute_distance(g, 0, 15)
    xs = [coords[v][0] for v in p.vertices]
    ys = [coords[v][1] for v in p.vertices]
    assert xs == sorted(xs) and ys == sorted(ys)
    for i, j in itertools.combinations(range(len(p.vertices)), 2):
        sub = shortest_path(g, p.vertices[i], p.vertices[j])
        assert sub.vertices == p.vertices[i:j + 1]


def test_direction_does_not_matter():
    coords, edges = grid(5, 4)
    g = embed(coords, edges)
    for s, t in [(0, 19), (3, 16), (5, 14)]:
        assert shortest_path(g, s, t).vertices == shortest_path(g, t, s).vertices[::-1]


@st.composite
def small_graphs(draw):
    w = draw(st.integers(2, 4))
    h = draw(st.integers(2, 3))
    coords, edges = grid(w, h)
    keep = [e for e in edges if draw(st.booleans()) or e[0] == 0]
    weights = [draw(st.integers(1, 4)) for _ in keep]
    return embed(coords, keep, weights)


@given(small_graphs(), st.data())
def test_dijkstra_matches_simple_path_enumeration(g, data):
    s = data.draw(st.sampled_from(g.vertices))
    t = data.draw(st.sampled_from(g.vertices))
    best = brute_distance(g, s, t) if s != t else 0
    if best is None:
        with pytest.raises(Unreachable):
            shortest_path(g, s, t)
        return
    assert shortest_path(g, s, t).length == best


def _intersection_is_one_run(p, q):
    common = [i for i, v in enumerate(p.vertices) if v in set(q.vertices)]
    if not common:
        return True
    return common == list(range(common[0], common[-1] + 1))


@given(st.integers(0, 10 ** 6), st.sampled_from(["grid-ring", "random-planar"]))
def test_disjoint_endpoint_paths_meet_in_one_run(seed, kind):
    inst = gen_instance(InstanceSpec(kind=kind, width=6, height=5, f=1, k=6, seed=seed))
    terms = inst.terminals
    paths = {}
    for s in terms:
        for t, p in paths_from(inst.graph, s, terms).items():
            paths[(s, t)] = p
    for (a, b), (c, d) in itertools.combinations([k for k in paths if k[0] < k[1]], 2):
        if len({a, b, c, d}) == 4:
            assert _intersection_is_one_run(paths[(a, b)], paths[(c, d)])


def test_distances_against_networkx(ring):
    d = all_terminal_distances(ring)
    for s in ring.terminals:
        ref = dijkstra_nx(ring.graph, s)
        for t in ring.terminals:
            if s != t:
                assert d[(s, t)] == ref[t]
                assert d[(s, t)] == d[(t, s)]


def test_single_terminal_table_is_empty():
    g = embed({0: (0, 0), 1: (1, 0), 2: (0, 1)}, [(0, 1), (1, 2), (2, 0)])
    g.outer_dart = (0, g.rotation[0][0])
    outer = g.face_edges(g.outer_face())
    inst = instance_from_walks(g, [(outer, [0])])
    assert all_terminal_distances(inst) == {}


def test_two_terminals_one_edge():
    g = embed({0: (0, 0), 1: (1, 0)}, [(0, 1)], weights=[5])
    g.outer_dart = (0, 0)
    inst = instance_from_walks(g, [(g.face_edges(0), [0, 1])])
    assert all_terminal_distances(inst) == {(0, 1): 5, (1, 0): 5}


def test_terminals_out_of_order_rejected():
    coords, edges = grid(3, 3)
    g = embed(coords, edges)
    outer = max(range(len(g.faces())), key=lambda i: len(g.faces()[i]))
    g.outer_dart = g.faces()[outer][0]
    walk = g.face_edges(outer)
    good = [v for v, _ in g.faces()[outer]][::-1]
    picks = [good[0], good[2], good[4]]
    instance_from_walks(g, [(walk, picks)])
    with pytest.raises(InputError):
        instance_from_walks(g, [(walk, [picks[0], picks[2], picks[1]])])


def test_shared_terminal_goes_to_first_face(ring):
    g = ring.graph
    outer_walk = g.face_edges(g.outer_face())
    t = ring.faces[0].terminals[0]
    inst = instance_from_walks(g, [(outer_walk, ring.faces[0].terminals), (outer_walk, [t])])
    assert inst.f == 1
