import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from oracles import cut_routable
from planar_emulator.errors import NegativeTriangleCapacity
from planar_emulator.wyedelta import (max_flow, random_capacities, routable, sample_demand, star_edges,
                                      triangle_capacities, triangle_edges, wye_delta_equiv_test)


def test_unit_star():
    caps = triangle_capacities(1, 1, 1)
    assert set(caps.values()) == {Fraction(1, 2)}


def test_unbalanced_star():
    caps = triangle_capacities(2, 1, 1)
    assert caps[("u", "v")] == 1
    assert caps[("u", "w")] == 1
    assert caps[("v", "w")] == 0


def test_negative_capacity_is_rejected():
    with pytest.raises(NegativeTriangleCapacity):
        triangle_capacities(5, 1, 1)


def _nx_flow(edges, s, t):
    g = nx.DiGraph()
    for a, b, c in edges:
        for x, y in ((a, b), (b, a)):
            old = g.get_edge_data(x, y, {"capacity": 0})["capacity"]
            g.add_edge(x, y, capacity=old + c)
    return nx.maximum_flow_value(g, s, t)


@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(1, 12)), min_size=1, max_size=14),
       st.integers(0, 5), st.integers(0, 5))
def test_max_flow_matches_networkx(raw, s, t):
    edges = [(a, b, Fraction(c, 3)) for a, b, c in raw if a != b]
    if s == t or not edges:
        return
    ours = max_flow(edges, s, t)
    nodes = {x for a, b, _ in edges for x in (a, b)}
    if s not in nodes or t not in nodes:
        assert ours == 0
        return
    # networkx gets integer capacities scaled by the common denominator
    assert ours * 3 == _nx_flow([(a, b, int(c * 3)) for a, b, c in edges], s, t)


@given(st.integers(0, 10 ** 6))
def test_routable_agrees_with_cut_condition(seed):
    rng = random.Random(seed)
    caps = random_capacities(rng)
    for edges in (star_edges(*caps), triangle_edges(*caps)):
        d = sample_demand(rng, max(caps))
        assert routable(edges, d) == cut_routable(edges, d)


def test_demand_must_balance():
    with pytest.raises(ValueError):
        routable(star_edges(1, 1, 1), {"u": 1, "v": 0, "w": 0})


def test_sampled_demands_sit_on_the_lattice():
    rng = random.Random(1)
    for _ in range(50):
        d = sample_demand(rng, Fraction(3))
        assert sum(d.values()) == 0
        assert all((v / 3 * 8).denominator == 1 for v in d.values())


def test_equivalence_on_random_capacities():
    rng = random.Random(7)
    for i in range(20):
        caps = random_capacities(rng)
        assert all(2 * c <= sum(caps) for c in caps)
        assert wye_delta_equiv_test(caps, seed=i, samples=30)


def test_a_wrong_triangle_is_caught():
    # full spoke capacities on the triangle overstate what the star can carry
    caps = (Fraction(1), Fraction(1), Fraction(1))
    star = star_edges(*caps)
    fat = [(a, b, Fraction(1)) for a, b, _ in triangle_edges(*caps)]
    rng = random.Random(0)
    assert any(routable(star, d) != routable(fat, d) for d in (sample_demand(rng, 1) for _ in range(100)))
