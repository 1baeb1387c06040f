"""Combinatorial crossing tests between paths of an embedded graph.

Terminals carry a *hole corner*: a position in their rotation, just
clockwise of a chosen edge, where the terminal's face sits.  A path that
starts or ends at a terminal is treated as if it continued into that corner
through a virtual stub, which makes left/right tests well defined at path
ends.
"""

from __future__ import annotations

from typing import Dict, Optional, Sequence

from .graph_core import PlanarGraph

STUB = None


def angle2(g: PlanarGraph, v: int, item, corners: Dict[int, int]) -> int:
    """Doubled angular index of an edge (or the stub) in the rotation at ``v``."""
    d = len(g.rotation[v])
    if item is STUB:
        return (2 * g.position(v, corners[v]) - 1) % (2 * d)
    return 2 * g.position(v, item)


def is_left(g: PlanarGraph, v: int, a, b, c, corners: Dict[int, int]) -> bool:
    """Whether ``c`` leaves ``v`` on the left of a path entering via ``a`` and leaving via ``b``."""
    d2 = 2 * len(g.rotation[v])
    ab = angle2(g, v, b, corners)
    return (angle2(g, v, c, corners) - ab) % d2 < (angle2(g, v, a, corners) - ab) % d2


def count_crossings(g: PlanarGraph, verts1: Sequence[int], edges1: Sequence[int],
                    verts2: Sequence[int], edges2: Sequence[int],
                    corners: Dict[int, int]) -> int:
    """Number of transversal crossings between two simple paths.

    Every maximal common subpath (a shared vertex or a shared run of edges)
    counts once if the second path arrives and departs on opposite sides of
    the first one.
    """
    idx2 = {v: i for i, v in enumerate(verts2)}
    eset2 = set(edges2)
    n1 = len(verts1)
    total = 0
    i = 0
    while i < n1:
        if verts1[i] not in idx2:
            i += 1
            continue
        j = i
        while j + 1 < n1 and edges1[j] in eset2:
            j += 1
        total += _run_crosses(g, verts1, edges1, verts2, edges2, idx2, i, j, corners)
        i = j + 1
    return total


def _item(edges: Sequence[int], k: int):
    if 0 <= k < len(edges):
        return edges[k]
    return STUB


def _run_crosses(g, verts1, edges1, verts2, edges2, idx2, i, j, corners) -> int:
    p = idx2[verts1[i]]
    q = idx2[verts1[j]]
    if i == j:
        v = verts1[i]
        a, b = _item(edges1, i - 1), _item(edges1, i)
        c, d = _item(edges2, p - 1), _item(edges2, p)
        if STUB in (c, d) and (a is STUB or b is STUB):
            return 0
        return int(is_left(g, v, a, b, c, corners) != is_left(g, v, a, b, d, corners))
    if q > p:
        c_i, c_j = _item(edges2, p - 1), _item(edges2, q)
    else:
        c_i, c_j = _item(edges2, p), _item(edges2, q - 1)
    a_i, b_i = _item(edges1, i - 1), _item(edges1, i)
    a_j, b_j = _item(edges1, j - 1), _item(edges1, j)
    if (c_i is STUB and a_i is STUB) or (c_j is STUB and b_j is STUB):
        return 0
    side_i = is_left(g, verts1[i], a_i, b_i, c_i, corners)
    side_j = is_left(g, verts1[j], a_j, b_j, c_j, corners)
    return int(side_i != side_j)


def hole_corners(g: PlanarGraph, terminals: Sequence[int], first_after_hole: Optional[Dict[int, int]] = None
                 ) -> Dict[int, int]:
    """Corner map for graphs whose terminal rotations start right after the hole."""
    if first_after_hole is not None:
        return dict(first_after_hole)
    return {t: g.rotation[t][0] for t in terminals if g.rotation.get(t)}
