"""Brute-force reference computations used by the tests.

Nothing here calls into the construction pipeline; where a graph is needed
it is either built from coordinates or read through plain attribute access.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import networkx as nx

from planar_emulator.graph_core import Edge, PlanarGraph


def embed(coords, edges, weights=None, outer=None, allow_zero=False):
    """PlanarGraph from straight-line coordinates; rotation sorted by angle."""
    inc = {v: [] for v in coords}
    objs = []
    for i, (a, b) in enumerate(edges):
        w = 1 if weights is None else weights[i]
        objs.append(Edge(i, a, b, w))
        for x, y in ((a, b), (b, a)):
            (x0, y0), (x1, y1) = coords[x], coords[y]
            inc[x].append((math.atan2(y1 - y0, x1 - x0), i))
    rot = {v: [e for _, e in sorted(lst)] for v, lst in inc.items()}
    g = PlanarGraph(list(coords), objs, rot, allow_zero=allow_zero)
    if outer is not None:
        g.outer_dart = outer
    return g


def grid(w, h, weights=None):
    coords = {y * w + x: (x, y) for y in range(h) for x in range(w)}
    edges = []
    for y in range(h):
        for x in range(w):
            if x + 1 < w:
                edges.append((y * w + x, y * w + x + 1))
            if y + 1 < h:
                edges.append((y * w + x, (y + 1) * w + x))
    return coords, edges


def to_nx(g):
    m = nx.MultiGraph()
    m.add_nodes_from(g.vertices)
    for e in g.edges.values():
        m.add_edge(e.u, e.v, key=e.id, w=e.w)
    return m


def brute_distance(g, s, t):
    """Minimum over all simple paths, by enumeration."""
    best = None
    m = to_nx(g)
    for path in nx.all_simple_edge_paths(m, s, t):
        d = sum((m.edges[u, v, k]["w"] for u, v, k in path), Fraction(0))
        if best is None or d < best:
            best = d
    return best


def dijkstra_nx(g, s):
    simple = nx.Graph()
    simple.add_nodes_from(g.vertices)
    for e in g.edges.values():
        if simple.has_edge(e.u, e.v):
            simple[e.u][e.v]["w"] = min(simple[e.u][e.v]["w"], e.w)
        else:
            simple.add_edge(e.u, e.v, w=e.w)
    return nx.single_source_dijkstra_path_length(simple, s, weight="w")


def inside_faces(g, cycle_edges, seed_face):
    """Faces not reachable from ``seed_face`` in the dual without crossing the cycle."""
    blocked = set(cycle_edges)
    faces = g.faces()
    by_edge = {}
    for fid, darts in enumerate(faces):
        for _, e in darts:
            by_edge.setdefault(e, set()).add(fid)
    adj = {i: set() for i in range(len(faces))}
    for e, fs in by_edge.items():
        if e in blocked:
            continue
        for a in fs:
            adj[a] |= fs - {a}
    seen = {seed_face}
    stack = [seed_face]
    while stack:
        x = stack.pop()
        for y in adj[x] - seen:
            seen.add(y)
            stack.append(y)
    return set(range(len(faces))) - seen


def path_vertices(g, a, b, edges):
    cur = a if edges and a in (g.edges[edges[0]].u, g.edges[edges[0]].v) else b
    out = [cur]
    for e in edges:
        cur = g.edges[e].other(cur)
        out.append(cur)
    return out


def _left(g, x, qin, qout, e):
    rot = g.rotation[x]
    n = len(rot)
    i = rot.index(qout)
    for k in range(1, n):
        y = rot[(i + k) % n]
        if y == e:
            return True
        if y == qin:
            return False
    raise AssertionError("edge not found around vertex")


def crossing_count(g, pv, pe, qv, qe):
    """Transversal crossings of two paths, judged by the side they enter and leave
    every shared run on.  Runs touching an endpoint of either path are ignored."""
    qpos = {v: i for i, v in enumerate(qv)}
    qedges = set(qe)
    n = 0
    i = 1
    while i < len(pv) - 1:
        if pv[i] not in qpos:
            i += 1
            continue
        j = i
        while j + 1 < len(pv) and pe[j] in qedges:
            j += 1
        ends = (0, len(qv) - 1)
        if j >= len(pv) - 1 or qpos[pv[i]] in ends or qpos[pv[j]] in ends:
            i = j + 1
            continue
        ki, kj = qpos[pv[i]], qpos[pv[j]]
        s1 = _left(g, pv[i], qe[ki - 1], qe[ki], pe[i - 1])
        s2 = _left(g, pv[j], qe[kj - 1], qe[kj], pe[j])
        n += s1 != s2
        i = j + 1
    return n


def cut_routable(edges, demand):
    """Gale's condition: every vertex set's net supply fits through its cut."""
    nodes = sorted({a for a, _, _ in edges} | {b for _, b, _ in edges} | set(demand), key=str)
    for r in range(1, len(nodes)):
        for s in itertools.combinations(nodes, r):
            s = set(s)
            supply = sum((demand.get(v, 0) for v in s), Fraction(0))
            cap = sum((c for a, b, c in edges if (a in s) != (b in s)), Fraction(0))
            if supply > cap:
                return False
    return True


def cyclic_descents(seq):
    """How many times a cyclic sequence steps backwards."""
    n = len(seq)
    return sum(1 for i in range(n) if seq[(i + 1) % n] < seq[i])
