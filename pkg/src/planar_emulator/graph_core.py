"""Embedded planar graphs, face tracing, region tests and unique shortest paths.

A graph carries a rotation system: for every vertex the counterclockwise
cyclic list of incident edge ids.  A *dart* ``(v, e)`` is edge ``e`` leaving
``v``.  Faces are traced with the face on the right of every dart, so bounded
faces come out clockwise and the outer face counterclockwise.

Shortest paths are made unique by comparing the key
``(length, hop count, edge-set mask)`` where the mask is the sum of
``2**rank(e)`` over the path's edges.  Every component of the key is
additive, so Dijkstra computes it exactly, the winner does not depend on the
direction of travel, and subpaths of winners are winners.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import InconsistentRotation, InputError, NotClosed, Unreachable

Dart = Tuple[int, int]


def parse_weight(w, allow_zero: bool = False) -> Fraction:
    """Parse an int, Fraction or a ``"p/q"`` / decimal string."""
    if isinstance(w, Fraction):
        val = w
    elif isinstance(w, bool):
        raise InputError(f"bad weight {w!r}")
    elif isinstance(w, int):
        val = Fraction(w)
    elif isinstance(w, str):
        try:
            val = Fraction(w.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad weight {w!r}") from exc
    else:
        raise InputError(f"weights must be strings or integers, got {w!r}")
    if val < 0 or (val == 0 and not allow_zero):
        raise InputError(f"non-positive weight {w!r}")
    return val


def format_weight(w: Fraction) -> str:
    w = Fraction(w)
    return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    w: Fraction

    def other(self, x: int) -> int:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise KeyError(f"vertex {x} not on edge {self.id}")


class PlanarGraph:
    """Weighted multigraph with a counterclockwise rotation system."""

    def __init__(self, vertices: Iterable[int], edges: Iterable[Edge],
                 rotation: Dict[int, Sequence[int]], outer_dart: Optional[Dart] = None,
                 allow_zero: bool = False):
        self.vertices: List[int] = sorted(set(vertices))
        self.edges: Dict[int, Edge] = {}
        for e in edges:
            if e.id in self.edges:
                raise InputError(f"duplicate edge id {e.id}")
            if e.u == e.v:
                raise InputError(f"self-loop on edge {e.id} is not supported")
            w = parse_weight(e.w, allow_zero=allow_zero)
            self.edges[e.id] = Edge(e.id, e.u, e.v, w)
        self.rotation: Dict[int, List[int]] = {v: list(rotation.get(v, [])) for v in self.vertices}
        self.outer_dart = outer_dart
        self.allow_zero = allow_zero
        self._validate()
        self._pos = {v: {e: i for i, e in enumerate(rot)} for v, rot in self.rotation.items()}
        self._faces: Optional[List[Tuple[Dart, ...]]] = None
        self._face_of: Optional[Dict[Dart, int]] = None
        self._ranks: Optional[Dict[int, int]] = None

    def _validate(self) -> None:
        vset = set(self.vertices)
        for e in self.edges.values():
            if e.u not in vset or e.v not in vset:
                raise InputError(f"edge {e.id} has an unknown endpoint")
        for v, rot in self.rotation.items():
            if len(set(rot)) != len(rot):
                raise InconsistentRotation(f"rotation of {v} repeats an edge")
            for eid in rot:
                e = self.edges.get(eid)
                if e is None or v not in (e.u, e.v):
                    raise InconsistentRotation(f"rotation of {v} lists non-incident edge {eid}")
        for e in self.edges.values():
            for x in (e.u, e.v):
                if e.id not in self.rotation.get(x, ()):
                    raise InconsistentRotation(f"edge {e.id} missing from rotation of {x}")

    # -- local structure -------------------------------------------------
    def other(self, eid: int, v: int) -> int:
        return self.edges[eid].other(v)

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def position(self, v: int, eid: int) -> int:
        return self._pos[v][eid]

    def succ(self, v: int, eid: int) -> int:
        rot = self.rotation[v]
        return rot[(self._pos[v][eid] + 1) % len(rot)]

    def pred(self, v: int, eid: int) -> int:
        rot = self.rotation[v]
        return rot[(self._pos[v][eid] - 1) % len(rot)]

    def ranks(self) -> Dict[int, int]:
        if self._ranks is None:
            self._ranks = {eid: i for i, eid in enumerate(sorted(self.edges))}
        return self._ranks

    # -- faces -------------------------------------------------------------
    def faces(self) -> List[Tuple[Dart, ...]]:
        if self._faces is None:
            faces: List[Tuple[Dart, ...]] = []
            face_of: Dict[Dart, int] = {}
            for v in self.vertices:
                for eid in self.rotation[v]:
                    if (v, eid) in face_of:
                        continue
                    walk = []
                    dart = (v, eid)
                    while dart not in face_of:
                        face_of[dart] = len(faces)
                        walk.append(dart)
                        x, e = dart
                        y = self.other(e, x)
                        dart = (y, self.succ(y, e))
                    if dart != (v, eid):
                        raise InconsistentRotation("face tracing did not close")
                    faces.append(tuple(walk))
            self._faces = faces
            self._face_of = face_of
        return self._faces

    def face_of_dart(self, v: int, eid: int) -> int:
        self.faces()
        return self._face_of[(v, eid)]

    def outer_face(self) -> Optional[int]:
        if self.outer_dart is None:
            return None
        return self.face_of_dart(*self.outer_dart)

    def face_edges(self, fid: int) -> List[int]:
        return [e for _, e in self.faces()[fid]]

    def face_vertices(self, fid: int) -> List[int]:
        return [v for v, _ in self.faces()[fid]]

    def find_face(self, walk: Sequence[int]) -> int:
        """Index of the face whose edge walk equals ``walk`` up to rotation."""
        walk = list(walk)
        n = len(walk)
        for fid, darts in enumerate(self.faces()):
            if len(darts) != n:
                continue
            seq = [e for _, e in darts]
            for s in range(n):
                if seq[s] == walk[0] and seq[s:] + seq[:s] == walk:
                    return fid
        raise InputError(f"no face has boundary walk {walk}")

    def components(self) -> List[List[int]]:
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges.values():
            a, b = find(e.u), find(e.v)
            if a != b:
                parent[a] = b
        groups: Dict[int, List[int]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return list(groups.values())

    def euler_ok(self) -> bool:
        """Euler's formula on every component that has at least one edge."""
        faces = self.faces()
        comp_of = {}
        for i, comp in enumerate(self.components()):
            for v in comp:
                comp_of[v] = i
        counts: Dict[int, List[int]] = {}
        for v in self.vertices:
            c = counts.setdefault(comp_of[v], [0, 0, 0])
            c[0] += 1
        for e in self.edges.values():
            counts[comp_of[e.u]][1] += 1
        for darts in faces:
            counts[comp_of[darts[0][0]]][2] += 1
        for nv, ne, nf in counts.values():
            if ne and nv - ne + nf != 2:
                return False
        return True

    # -- editing helpers ---------------------------------------------------
    def with_weights(self, weights: Dict[int, Fraction], allow_zero: bool = True) -> "PlanarGraph":
        edges = [Edge(e.id, e.u, e.v, Fraction(weights.get(e.id, e.w))) for e in self.edges.values()]
        return PlanarGraph(self.vertices, edges, self.rotation, self.outer_dart, allow_zero=allow_zero)

    def mirrored(self) -> "PlanarGraph":
        rot = {v: list(reversed(r)) for v, r in self.rotation.items()}
        return PlanarGraph(self.vertices, self.edges.values(), rot, self.outer_dart, allow_zero=self.allow_zero)

    def __repr__(self) -> str:
        return f"PlanarGraph(|V|={len(self.vertices)}, |E|={len(self.edges)})"


# ---------------------------------------------------------------------------
# regions

def walk_darts(g: PlanarGraph, cycle: Sequence[int], start: Optional[int] = None) -> List[Dart]:
    """Orient an edge walk into darts; raises NotClosed if it does not close."""
    cycle = list(cycle)
    if not cycle:
        raise NotClosed("empty walk")
    first = g.edges[cycle[0]]
    starts = [start] if start is not None else [first.u, first.v]
    for s in starts:
        cur = s
        darts = []
        ok = True
        for eid in cycle:
            e = g.edges[eid]
            if cur not in (e.u, e.v):
                ok = False
                break
            darts.append((cur, eid))
            cur = e.other(cur)
        if ok and cur == s:
            return darts
    raise NotClosed(f"walk {cycle} is not closed")


def reachable_faces(g: PlanarGraph, blocked: Iterable[int], seed: int) -> set:
    blocked = set(blocked)
    adj: Dict[int, List[int]] = {}
    for e in g.edges.values():
        if e.id in blocked:
            continue
        a = g.face_of_dart(e.u, e.id)
        b = g.face_of_dart(e.v, e.id)
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    seen = {seed}
    stack = [seed]
    while stack:
        x = stack.pop()
        for y in adj.get(x, ()):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def enclosed_faces(g: PlanarGraph, cycle: Sequence[int], seed_face: Optional[int] = None) -> set:
    """Faces not reachable in the dual from ``seed_face`` without crossing ``cycle``.

    ``seed_face`` defaults to the designated outer face.
    """
    walk_darts(g, cycle)
    if seed_face is None:
        seed_face = g.outer_face()
        if seed_face is None:
            raise InputError("graph has no designated outer face")
    seen = reachable_faces(g, cycle, seed_face)
    return set(range(len(g.faces()))) - seen


# ---------------------------------------------------------------------------
# shortest paths

@dataclass
class TerminalPath:
    endpoints: Tuple[int, int]
    vertices: List[int]
    edges: List[int]
    length: Fraction

    def reversed(self) -> "TerminalPath":
        return TerminalPath((self.endpoints[1], self.endpoints[0]), self.vertices[::-1],
                            self.edges[::-1], self.length)


def shortest_path_tree(g: PlanarGraph, s: int, weight: Optional[Dict[int, Fraction]] = None,
                       skip: Optional[set] = None):
    """Dijkstra under the tie-broken key; returns ``(key, pred_edge)`` maps."""
    ranks = g.ranks()
    key = {s: (Fraction(0), 0, 0)}
    pred: Dict[int, Optional[int]] = {s: None}
    done = set()
    heap = [(Fraction(0), 0, 0, s)]
    while heap:
        d, h, m, v = heapq.heappop(heap)
        if v in done:
            continue
        done.add(v)
        for eid in g.rotation[v]:
            if skip and eid in skip:
                continue
            e = g.edges[eid]
            w = e.w if weight is None else weight[eid]
            y = e.other(v)
            if y in done:
                continue
            cand = (d + w, h + 1, m + (1 << ranks[eid]))
            old = key.get(y)
            if old is None or cand < old:
                key[y] = cand
                pred[y] = eid
                heapq.heappush(heap, (cand[0], cand[1], cand[2], y))
    return key, pred


def _extract(g: PlanarGraph, s: int, t: int, key, pred) -> TerminalPath:
    if t not in key:
        raise Unreachable(f"{t} unreachable from {s}")
    verts = [t]
    edges: List[int] = []
    cur = t
    while cur != s:
        eid = pred[cur]
        edges.append(eid)
        cur = g.other(eid, cur)
        verts.append(cur)
    verts.reverse()
    edges.reverse()
    return TerminalPath((s, t), verts, edges, key[t][0])


def shortest_path(g: PlanarGraph, s: int, t: int, weight: Optional[Dict[int, Fraction]] = None,
                  skip: Optional[set] = None) -> TerminalPath:
    key, pred = shortest_path_tree(g, s, weight, skip)
    return _extract(g, s, t, key, pred)


def paths_from(g: PlanarGraph, s: int, targets: Iterable[int],
               weight: Optional[Dict[int, Fraction]] = None, skip: Optional[set] = None
               ) -> Dict[int, TerminalPath]:
    key, pred = shortest_path_tree(g, s, weight, skip)
    return {t: _extract(g, s, t, key, pred) for t in targets if t != s}


def pair_key(a: int, b: int) -> Tuple[int, int]:
    return (a, b) if a <= b else (b, a)


# ---------------------------------------------------------------------------
# terminal instances

@dataclass
class TerminalFace:
    """Terminals of one designated face, in clockwise order.

    ``corners[t]`` is the edge leaving ``t`` right after the face's corner at
    ``t`` in counterclockwise order, so the face is ``face_of_dart(t, corners[t])``.
    """

    terminals: List[int]
    corners: Dict[int, Optional[int]]
    is_outer: bool = False
    boundary: List[int] = field(default_factory=list)


def clockwise_vertices(g: PlanarGraph, fid: int, is_outer: bool) -> List[Dart]:
    darts = list(g.faces()[fid])
    return darts[::-1] if is_outer else darts


@dataclass
class TerminalInstance:
    graph: PlanarGraph
    faces: List[TerminalFace]
    meta: Dict = field(default_factory=dict)

    @property
    def f(self) -> int:
        return len(self.faces)

    @property
    def terminals(self) -> List[int]:
        return [t for face in self.faces for t in face.terminals]

    @property
    def k(self) -> int:
        return len(self.terminals)

    def face_index(self) -> Dict[int, int]:
        return {t: r for r, face in enumerate(self.faces) for t in face.terminals}

    def hole_face(self, r: int) -> Optional[int]:
        face = self.faces[r]
        t = face.terminals[0]
        c = face.corners.get(t)
        if c is None:
            return None
        return self.graph.face_of_dart(t, c)

    def validate(self) -> None:
        seen = set()
        for face in self.faces:
            if not face.terminals:
                raise InputError("a designated face has no terminals")
            for t in face.terminals:
                if t in seen:
                    raise InputError(f"terminal {t} listed on two faces")
                seen.add(t)
                if t not in self.graph.rotation:
                    raise InputError(f"terminal {t} is not a vertex")


def instance_from_walks(g: PlanarGraph, specs: Sequence[Tuple[Sequence[int], Sequence[int]]],
                        dedupe: bool = True) -> TerminalInstance:
    """Build an instance from ``(face_walk, clockwise terminals)`` pairs.

    A terminal listed on several faces is kept only on the lowest-index one.
    """
    outer = g.outer_face()
    faces: List[TerminalFace] = []
    taken = set()
    for walk, terms in specs:
        fid = g.find_face(walk)
        is_outer = fid == outer
        cw = clockwise_vertices(g, fid, is_outer)
        order = [v for v, _ in cw]
        terms = list(terms)
        if len(set(terms)) != len(terms):
            raise InputError("repeated terminal on a face")
        for t in terms:
            if order.count(t) != 1:
                raise InputError(f"terminal {t} must appear exactly once on its face walk")
        if len(terms) > 2:
            idx = [order.index(t) for t in terms]
            s = idx.index(min(idx))
            rolled = idx[s:] + idx[:s]
            if rolled != sorted(rolled):
                raise InputError("terminals are not listed in clockwise order")
        corners = {}
        for v, e in g.faces()[fid]:
            if v in terms:
                corners[v] = e
        kept = [t for t in terms if not (dedupe and t in taken)]
        taken.update(kept)
        if not kept:
            continue
        faces.append(TerminalFace(kept, {t: corners[t] for t in kept}, is_outer))
    inst = TerminalInstance(g, faces)
    inst.validate()
    return inst


def all_terminal_distances(inst: TerminalInstance) -> Dict[Tuple[int, int], Fraction]:
    """Exact distances for every ordered pair of distinct terminals."""
    terms = inst.terminals
    out: Dict[Tuple[int, int], Fraction] = {}
    for s in terms:
        key, _ = shortest_path_tree(inst.graph, s)
        for t in terms:
            if t == s:
                continue
            if t not in key:
                raise Unreachable(f"{t} unreachable from {s}")
            out[(s, t)] = key[t][0]
    return out
