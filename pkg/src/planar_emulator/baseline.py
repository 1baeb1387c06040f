"""Baseline minor: union of terminal shortest paths with degree-2 chains contracted."""

from __future__ import annotations

from collections import Counter
from typing import Dict, List

from .graph_core import Edge, PlanarGraph, TerminalInstance, paths_from
from .oneface import Emulator


def path_union(inst: TerminalInstance) -> set:
    """Edge ids used by the canonical shortest path of some terminal pair."""
    g = inst.graph
    terms = inst.terminals
    used = set()
    for i, s in enumerate(terms):
        for p in paths_from(g, s, terms[i + 1:]).values():
            used.update(p.edges)
    return used


def special_vertices(g: PlanarGraph, edges: set, terminals) -> set:
    deg = Counter()
    for e in edges:
        deg[g.edges[e].u] += 1
        deg[g.edges[e].v] += 1
    return {v for v, d in deg.items() if d >= 3} | set(terminals)


def build_knz_minor(inst: TerminalInstance) -> Emulator:
    """Keep every terminal shortest path, then replace each induced path between
    special vertices by a single edge of the same length.

    Provenance records the original edge ids behind each new edge, so the result
    can be checked to be a minor of the input.
    """
    g = inst.graph
    used = path_union(inst)
    special = special_vertices(g, used, inst.terminals)
    keep_v = {g.edges[e].u for e in used} | {g.edges[e].v for e in used} | set(inst.terminals)
    rotation: Dict[int, List[int]] = {v: [e for e in g.rotation[v] if e in used] for v in keep_v}
    edges: Dict[int, Edge] = {e: g.edges[e] for e in used}
    chain: Dict[int, List[int]] = {e: [e] for e in used}
    next_e = max(g.edges) + 1 if g.edges else 0
    for v in sorted(keep_v - special):
        rot = rotation[v]
        if len(rot) != 2:
            continue
        a, b = edges[rot[0]], edges[rot[1]]
        x, y = a.other(v), b.other(v)
        if x == y:
            continue
        new = Edge(next_e, x, y, a.w + b.w)
        next_e += 1
        rotation[x] = [new.id if e == a.id else e for e in rotation[x]]
        rotation[y] = [new.id if e == b.id else e for e in rotation[y]]
        chain[new.id] = chain.pop(a.id) + chain.pop(b.id)
        del edges[a.id], edges[b.id], rotation[v]
        edges[new.id] = new
    h = PlanarGraph(list(rotation), edges.values(), rotation, allow_zero=False)
    faces = h.faces()
    if faces:
        h.outer_dart = faces[0][0]
    prov = {e: "baseline " + ",".join(map(str, sorted(chain[e]))) for e in edges}
    stats = {"special_vertices": len(special & set(rotation)), "union_edges": len(used)}
    return Emulator(h, {t: t for t in inst.terminals}, prov, stats)


def knz_bound(k: int) -> int:
    pairs = k * (k - 1) // 2
    return 2 * (pairs * (pairs - 1) // 2) + k
