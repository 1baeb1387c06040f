"""Emulators for terminals on a single face: the quarter grid.

For terminals ``t_1 .. t_m`` the grid has a vertex ``p(i, j)`` for every
``i < j``, drawn at ``(j, -i)``; terminal ``t_i`` sits at ``(i, -i)``.  Row
``i`` runs from ``t_i`` through ``p(i, i+1) .. p(i, m)``; column ``j`` runs
from ``p(1, j)`` down to ``t_j``.  The designated path of a pair ``i < j``
goes along row ``i`` to ``p(i, j)`` and then down column ``j``.  All
terminals lie on the outer face, in the order ``t_1 .. t_m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import LPInfeasible
from .graph_core import Edge, PlanarGraph, pair_key
from .weights import solve

Pair = Tuple[int, int]


@dataclass
class QuarterGrid:
    m: int
    graph: PlanarGraph
    terminals: List[int]
    coords: Dict[int, Tuple[int, int]]
    paths: Dict[Pair, List[int]]


@dataclass
class Emulator:
    """A weighted planar graph with terminal identification and edge provenance."""

    graph: PlanarGraph
    terminal_map: Dict[int, int]
    provenance: Dict[int, str] = field(default_factory=dict)
    stats: Dict = field(default_factory=dict)


def _rotation_from_coords(coords, edges):
    inc: Dict[int, List[Tuple[float, int]]] = {v: [] for v in coords}
    for e in edges:
        for a, b in ((e.u, e.v), (e.v, e.u)):
            (x0, y0), (x1, y1) = coords[a], coords[b]
            inc[a].append((math.atan2(y1 - y0, x1 - x0), e.id))
    return {v: [e for _, e in sorted(lst)] for v, lst in inc.items()}


def build_quarter_grid(m: int) -> QuarterGrid:
    """Skeleton with ``m`` terminals (ids ``0 .. m-1``) and ``m(m-1)/2`` grid points."""
    if m < 1:
        raise ValueError("need at least one terminal")
    coords: Dict[int, Tuple[int, int]] = {}
    terms = list(range(m))
    for i in range(m):
        coords[i] = (i, -i)
    pid: Dict[Pair, int] = {}
    nxt = m
    for i in range(m):
        for j in range(i + 1, m):
            pid[(i, j)] = nxt
            coords[nxt] = (j, -i)
            nxt += 1
    edges: List[Edge] = []
    eid_of: Dict[Pair, int] = {}

    def link(a: int, b: int) -> None:
        eid = len(edges)
        edges.append(Edge(eid, a, b, 1))
        eid_of[pair_key(a, b)] = eid

    for i in range(m):
        row = [i] + [pid[(i, j)] for j in range(i + 1, m)]
        for a, b in zip(row, row[1:]):
            link(a, b)
    for j in range(m):
        column = [pid[(i, j)] for i in range(j)] + [j]
        for a, b in zip(column, column[1:]):
            link(a, b)
    rotation = _rotation_from_coords(coords, edges)
    outer = None
    if m >= 2:
        outer = (0, eid_of[pair_key(0, pid[(0, 1)])])
    g = PlanarGraph(list(coords), edges, rotation, outer_dart=outer, allow_zero=True)
    paths: Dict[Pair, List[int]] = {}
    for i in range(m):
        for j in range(i + 1, m):
            walk = [i] + [pid[(i, c)] for c in range(i + 1, j + 1)] + [pid[(r, j)] for r in range(i + 1, j)] + [j]
            paths[(i, j)] = [eid_of[pair_key(a, b)] for a, b in zip(walk, walk[1:])]
    return QuarterGrid(m, g, terms, coords, paths)


def oneface_emulator(terminals: Sequence[int], targets: Dict[Pair, Fraction],
                     engine: str = "auto") -> Emulator:
    """Weighted quarter grid reproducing ``targets`` among ``terminals`` exactly.

    ``terminals`` is the clockwise order on the face; ``targets`` may be keyed
    by either orientation of a pair.  The result's vertex ids are local; the
    terminal map sends each given terminal to its grid vertex.
    """
    m = len(terminals)
    qg = build_quarter_grid(m)
    tmap = {t: i for i, t in enumerate(terminals)}
    local: Dict[Pair, Fraction] = {}
    for i, s in enumerate(terminals):
        for j in range(i + 1, m):
            t = terminals[j]
            v = targets.get((s, t), targets.get((t, s)))
            if v is None:
                raise KeyError(f"no target for terminals {s}, {t}")
            local[(i, j)] = Fraction(v)
    if m < 2:
        return Emulator(qg.graph, tmap, {}, {"lp_rounds": 0})
    res = solve(qg.graph, qg.paths, local, equality_pairs=list(qg.paths), engine=engine)
    if not res.feasible:
        raise LPInfeasible("quarter-grid weights do not exist for these targets", res.certificate)
    g = qg.graph.with_weights(res.weights)
    return Emulator(g, tmap, {e: "oneface" for e in g.edges},
                    {"lp_rounds": res.rounds, "lp_generated": res.generated, "engine": res.engine})
