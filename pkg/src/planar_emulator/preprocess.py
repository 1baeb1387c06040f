"""Bring an instance into the simplified form used by the skeleton builder.

Two steps:

* ``enforce_face_cycles`` adds, inside every terminal face, a chord of exact
  length between cyclically consecutive terminals.  The face of each chord
  cycle becomes the terminal's *hole*.
* ``uncross_shortest_paths`` redraws every terminal shortest path as a
  strand.  Each vertex becomes a small disc whose boundary carries one point
  per strand lane of every incident edge, strands run as straight chords
  inside discs, and pairs of strands crossing twice are uncrossed by swapping
  their lanes along the shared subpath.  Crossing points become vertices of
  the simplified graph.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Dict, List, Optional, Tuple

from .errors import NonPlanarRotation, NonTermination, PropertyViolation
from .graph_core import (Edge, PlanarGraph, TerminalFace, TerminalInstance, TerminalPath,
                         all_terminal_distances, pair_key, paths_from, shortest_path_tree)
from .topology import count_crossings

END = "end"
TPOINT = ("T",)


@dataclass
class FaceCycle:
    """Terminals of one face in clockwise order, with ``boundary[j]`` joining
    ``terminals[j]`` and ``terminals[j + 1]``."""

    terminals: List[int]
    boundary: List[int]
    is_outer: bool = False


@dataclass
class SimplifiedInstance:
    graph: PlanarGraph
    faces: List[FaceCycle]
    strands: Dict[int, TerminalPath]
    pair_strand: Dict[Tuple[int, int], int]
    crossings: Dict[Tuple[int, int], int]
    provenance: Dict[int, int]
    distances: Dict[Tuple[int, int], Fraction]
    stats: Dict = field(default_factory=dict)

    @property
    def terminals(self) -> List[int]:
        return [t for face in self.faces for t in face.terminals]

    def face_index(self) -> Dict[int, int]:
        return {t: r for r, face in enumerate(self.faces) for t in face.terminals}

    def corners(self) -> Dict[int, int]:
        """Terminal rotations start right after the hole corner."""
        return {t: self.graph.rotation[t][0] for t in self.terminals if self.graph.rotation[t]}

    def hole_face(self, r: int) -> Optional[int]:
        t = self.faces[r].terminals[0]
        rot = self.graph.rotation[t]
        if not rot:
            return None
        return self.graph.face_of_dart(t, rot[0])

    def walk_order(self, r: int) -> Tuple[List[int], List[int]]:
        """Terminals of face ``r`` seen from inside the face, with joining edges.

        Bounded faces keep their clockwise order; the outer face is read the
        other way round, so the face is always on the right of the walk.
        """
        face = self.faces[r]
        ts, bnd = list(face.terminals), list(face.boundary)
        m = len(ts)
        if not face.is_outer or m < 2:
            return ts, bnd
        return ts[::-1], [bnd[(m - 2 - j) % m] for j in range(m)]

    def crossing_sign(self, a: int, b: int) -> int:
        """+1 when strand ``b`` leaves to the left of strand ``a`` at their crossing."""
        x = self.crossings[pair_key(a, b)]
        pa, pb = self.strands[a], self.strands[b]
        af = pa.edges[pa.vertices.index(x)]
        bf = pb.edges[pb.vertices.index(x)]
        return 1 if self.graph.succ(x, af) == bf else -1

    def strand(self, s: int, t: int) -> TerminalPath:
        """The strand between ``s`` and ``t``, oriented from ``s``."""
        p = self.strands[self.pair_strand[pair_key(s, t)]]
        return p if p.endpoints[0] == s else p.reversed()


# ---------------------------------------------------------------------------
# chords along terminal faces

def enforce_face_cycles(inst: TerminalInstance,
                        distances: Optional[Dict[Tuple[int, int], Fraction]] = None
                        ) -> TerminalInstance:
    """Add exact-length chords between consecutive terminals of every face."""
    g = inst.graph
    if distances is None:
        distances = all_terminal_distances(inst)
    edges = list(g.edges.values())
    rotation = {v: list(r) for v, r in g.rotation.items()}
    next_id = max(g.edges) + 1 if g.edges else 0
    outer_dart = g.outer_dart
    outer_fid = g.outer_face()
    faces = []
    for face in inst.faces:
        ts = list(face.terminals)
        m = len(ts)
        hole = g.face_of_dart(ts[0], face.corners[ts[0]]) if face.corners.get(ts[0]) is not None else None
        if m == 1:
            faces.append(TerminalFace(ts, dict(face.corners), face.is_outer, []))
            continue
        walk = ts[::-1] if face.is_outer else ts
        chords = []
        for i in range(m):
            a, b = walk[i], walk[(i + 1) % m]
            edges.append(Edge(next_id, a, b, distances[(a, b)]))
            chords.append(next_id)
            next_id += 1
        corners = {}
        for i, w in enumerate(walk):
            rot = rotation[w]
            k = rot.index(face.corners[w])
            rot[k:k] = [chords[i - 1], chords[i]]
            corners[w] = chords[i]
        if face.is_outer:
            boundary = [chords[(m - 2 - j) % m] for j in range(m)]
        else:
            boundary = list(chords)
        faces.append(TerminalFace(ts, corners, face.is_outer, boundary))
        if hole is not None and hole == outer_fid:
            outer_dart = (walk[0], chords[0])
    g1 = PlanarGraph(g.vertices, edges, rotation, outer_dart)
    out = TerminalInstance(g1, faces, dict(inst.meta))
    out.validate()
    return out


# ---------------------------------------------------------------------------
# strands, lanes and discs

class _Redraw:
    """Mutable disc/strip model over the chord-augmented graph."""

    def __init__(self, inst1: TerminalInstance, seed: int = 0):
        self.inst = inst1
        self.g = inst1.graph
        self.seed = seed
        self.corner = {}
        for face in inst1.faces:
            self.corner.update(face.corners)
        terms = inst1.terminals
        self.terminals = terms
        self.strands: Dict[int, TerminalPath] = {}
        self.pair_strand: Dict[Tuple[int, int], int] = {}
        sid = 0
        for i, s in enumerate(terms):
            found = paths_from(self.g, s, terms[i + 1:])
            for t in terms[i + 1:]:
                self.strands[sid] = found[t]
                self.pair_strand[pair_key(s, t)] = sid
                sid += 1
        self.where: Dict[Tuple[int, int], int] = {}
        self.vindex: Dict[int, Dict[int, int]] = {}
        uses = defaultdict(list)
        through = defaultdict(list)
        for sid, p in self.strands.items():
            self.vindex[sid] = {v: k for k, v in enumerate(p.vertices)}
            for k, e in enumerate(p.edges):
                uses[e].append(sid)
                self.where[(sid, e)] = k
            for v in p.vertices:
                through[v].append(sid)
        self.through = dict(through)
        self.lanes: Dict[int, List[int]] = {}
        for e, sids in uses.items():
            self.lanes[e] = sorted(sids, key=cmp_to_key(lambda a, b, e=e: self._compare(a, b, e)))
        self.disc_pairs: Dict[int, set] = {}
        self.pair_discs: Dict[Tuple[int, int], set] = defaultdict(set)
        for v in self.through:
            self._recompute(v)

    # -- lane order ------------------------------------------------------
    def _oriented(self, sid: int, e: int):
        p = self.strands[sid]
        k = self.where[(sid, e)]
        if p.vertices[k] == self.g.edges[e].u:
            return p.vertices, p.edges, k
        return p.vertices[::-1], p.edges[::-1], len(p.edges) - 1 - k

    def _offset(self, x: int, ein: int, item) -> int:
        g = self.g
        d = g.degree(x)
        base = g.position(x, ein)
        if item == END:
            return (2 * ((g.position(x, self.corner[x]) - base) % d) - 1) % (2 * d)
        return 2 * ((g.position(x, item) - base) % d)

    def _compare(self, a: int, b: int, e: int) -> int:
        va, ea, ka = self._oriented(a, e)
        vb, eb, kb = self._oriented(b, e)
        for step in (1, -1):
            j = 0
            while True:
                if step > 0:
                    x = va[ka + 1 + j]
                    ein = ea[ka + j]
                    na = ea[ka + 1 + j] if ka + 1 + j < len(ea) else END
                    nb = eb[kb + 1 + j] if kb + 1 + j < len(eb) else END
                else:
                    x = va[ka - j]
                    ein = ea[ka - j]
                    na = ea[ka - j - 1] if ka - j - 1 >= 0 else END
                    nb = eb[kb - j - 1] if kb - j - 1 >= 0 else END
                if na != nb:
                    left = self._offset(x, ein, na) > self._offset(x, ein, nb)
                    if step < 0:
                        left = not left
                    return -1 if left else 1
                if na == END:
                    break
                j += 1
        raise PropertyViolation(f"strands {a} and {b} coincide")

    # -- discs -----------------------------------------------------------
    def points(self, v: int) -> List:
        pts = []
        tv = self.corner.get(v)
        for e in self.g.rotation[v]:
            if e == tv:
                pts.append(TPOINT)
            ln = self.lanes.get(e, ())
            seq = reversed(ln) if v == self.g.edges[e].u else ln
            pts.extend((e, s) for s in seq)
        return pts

    def chord(self, sid: int, v: int):
        p = self.strands[sid]
        k = self.vindex[sid][v]
        entry = (p.edges[k - 1], sid) if k > 0 else TPOINT
        exit_ = (p.edges[k], sid) if k < len(p.edges) else TPOINT
        return entry, exit_

    def _recompute(self, v: int) -> None:
        for pair in self.disc_pairs.get(v, ()):
            ds = self.pair_discs[pair]
            ds.discard(v)
            if not ds:
                del self.pair_discs[pair]
        pos = {pt: i for i, pt in enumerate(self.points(v))}
        chords = []
        for sid in self.through.get(v, ()):
            a, b = self.chord(sid, v)
            chords.append((sid, pos[a], pos[b]))
        found = set()
        for i in range(len(chords)):
            sa, p1, p2 = chords[i]
            lo, hi = min(p1, p2), max(p1, p2)
            for j in range(i + 1, len(chords)):
                sb, q1, q2 = chords[j]
                if q1 in (p1, p2) or q2 in (p1, p2):
                    continue
                if (lo < q1 < hi) != (lo < q2 < hi):
                    found.add(pair_key(sa, sb))
        self.disc_pairs[v] = found
        for pair in found:
            self.pair_discs[pair].add(v)

    def total_crossings(self) -> int:
        return sum(len(ds) for ds in self.pair_discs.values())

    def shares_endpoint(self, a: int, b: int) -> bool:
        return bool(set(self.strands[a].endpoints) & set(self.strands[b].endpoints))

    # -- uncrossing ------------------------------------------------------
    def uncross(self) -> int:
        budget = self.total_crossings()
        steps = 0
        while True:
            target = None
            for pair in sorted(self.pair_discs):
                n = len(self.pair_discs[pair])
                if n >= 2 or (n >= 1 and self.shares_endpoint(*pair)):
                    target = pair
                    break
            if target is None:
                return steps
            steps += 1
            if steps > budget:
                raise NonTermination(f"uncrossing exceeded {budget} steps")
            before = self.total_crossings()
            self._uncross_pair(*target)
            if self.total_crossings() >= before:
                raise NonTermination(f"uncrossing {target} did not reduce crossings")

    def _uncross_pair(self, a: int, b: int) -> None:
        pa = self.strands[a]
        ia = self.vindex[a]
        ks = sorted(ia[v] for v in self.pair_discs[(a, b)])
        shared = set(pa.endpoints) & set(self.strands[b].endpoints)
        if shared:
            s = shared.pop()
            k0 = ia[s]
            kq = ks[0] if k0 == 0 else ks[-1]
            lo, hi = min(k0, kq), max(k0, kq)
        else:
            lo, hi = ks[0], ks[1]
        for e in pa.edges[lo:hi]:
            ln = self.lanes[e]
            if b not in ln:
                raise PropertyViolation(f"strands {a},{b} do not share edge {e}")
            i, j = ln.index(a), ln.index(b)
            ln[i], ln[j] = ln[j], ln[i]
        for v in pa.vertices[lo:hi + 1]:
            self._recompute(v)

    # -- geometry --------------------------------------------------------
    def coordinates(self, v: int, n: int, attempt: int) -> List[Tuple[Fraction, Fraction]]:
        rng = random.Random(f"{self.seed}:{v}:{attempt}")
        pts = []
        for i in range(n):
            x = i + Fraction(rng.randrange(1, 997), 2003)
            pts.append((x, x * x))
        return pts

    def disc_geometry(self, v: int):
        """Crossing parameters and signs of all crossing chord pairs in disc ``v``."""
        pts = self.points(v)
        pos = {pt: i for i, pt in enumerate(pts)}
        pairs = sorted(self.disc_pairs.get(v, ()))
        for attempt in range(50):
            xy = self.coordinates(v, len(pts), attempt)
            seg = {}
            for sid in self.through.get(v, ()):
                a, b = self.chord(sid, v)
                seg[sid] = (xy[pos[a]], xy[pos[b]])
            out = {}
            params = defaultdict(list)
            for (sa, sb) in pairs:
                (p, q), (r, s) = seg[sa], seg[sb]
                da = (q[0] - p[0], q[1] - p[1])
                db = (s[0] - r[0], s[1] - r[1])
                den = da[0] * db[1] - da[1] * db[0]
                rp = (r[0] - p[0], r[1] - p[1])
                lam = (rp[0] * db[1] - rp[1] * db[0]) / den
                mu = (rp[0] * da[1] - rp[1] * da[0]) / den
                out[(sa, sb)] = (lam, mu, 1 if den > 0 else -1)
                params[sa].append(lam)
                params[sb].append(mu)
            if all(len(set(ls)) == len(ls) for ls in params.values()):
                return out, pos
        raise PropertyViolation(f"could not place disc {v} in general position")


def uncross_shortest_paths(inst1: TerminalInstance, distances: Dict[Tuple[int, int], Fraction],
                           seed: int = 0, audit: bool = True) -> SimplifiedInstance:
    """Redraw the terminal shortest paths of a chord-augmented instance."""
    model = _Redraw(inst1, seed)
    initial = model.total_crossings()
    steps = model.uncross()
    for (a, b), ds in model.pair_discs.items():
        if len(ds) > 1 or model.shares_endpoint(a, b):
            raise PropertyViolation(f"strands {a},{b} still cross {len(ds)} times")
    si = _build_simplified(model, distances)
    si.stats.update({"initial_crossings": initial, "uncross_steps": steps,
                     "final_crossings": model.total_crossings()})
    if audit:
        audit_simplified(si)
    return si


def _build_simplified(model: _Redraw, distances) -> SimplifiedInstance:
    g1 = model.g
    inst1 = model.inst
    next_v = max(g1.vertices) + 1 if g1.vertices else 0
    crossing_vertex: Dict[Tuple[int, int], int] = {}
    provenance: Dict[int, int] = {t: t for t in inst1.terminals}
    events = defaultdict(list)
    signs: Dict[Tuple[int, int], int] = {}
    geometry = {}
    for v in sorted(model.disc_pairs):
        if not model.disc_pairs[v]:
            continue
        out, _ = model.disc_geometry(v)
        geometry[v] = out
        for (a, b), (lam, mu, sg) in out.items():
            crossing_vertex[(a, b)] = next_v
            provenance[next_v] = v
            next_v += 1
            signs[(a, b)] = sg
            events[a].append((model.vindex[a][v], lam, b))
            events[b].append((model.vindex[b][v], mu, a))

    edges: List[Edge] = []
    eid = 0
    nodes: Dict[int, List[int]] = {}
    pieces: Dict[int, List[int]] = {}
    strands: Dict[int, TerminalPath] = {}
    for sid, p in model.strands.items():
        prefix = [Fraction(0)]
        for e in p.edges:
            prefix.append(prefix[-1] + g1.edges[e].w)
        evs = sorted(events[sid])
        ns = [p.vertices[0]] + [crossing_vertex[pair_key(sid, o)] for _, _, o in evs] + [p.vertices[-1]]
        at = [0] + [k for k, _, _ in evs] + [len(p.vertices) - 1]
        ps = []
        for i in range(len(ns) - 1):
            edges.append(Edge(eid, ns[i], ns[i + 1], prefix[at[i + 1]] - prefix[at[i]]))
            ps.append(eid)
            eid += 1
        nodes[sid] = ns
        pieces[sid] = ps
        strands[sid] = TerminalPath(p.endpoints, ns, ps, p.length)

    rotation: Dict[int, List[int]] = {}
    for (a, b), x in crossing_vertex.items():
        ia = nodes[a].index(x)
        ib = nodes[b].index(x)
        af, ab = pieces[a][ia], pieces[a][ia - 1]
        bf, bb = pieces[b][ib], pieces[b][ib - 1]
        rotation[x] = [af, bf, ab, bb] if signs[(a, b)] > 0 else [af, bb, ab, bf]

    faces: List[FaceCycle] = []
    first_last: Dict[int, Tuple[Optional[int], Optional[int]]] = {}
    for face in inst1.faces:
        ts = face.terminals
        m = len(ts)
        bnd = []
        if m >= 2:
            for j in range(m):
                chord = g1.edges[face.boundary[j]]
                edges.append(Edge(eid, ts[j], ts[(j + 1) % m], chord.w))
                bnd.append(eid)
                eid += 1
            for j, t in enumerate(ts):
                if face.is_outer:
                    first_last[t] = (bnd[j - 1], bnd[j])
                else:
                    first_last[t] = (bnd[j], bnd[j - 1])
        else:
            first_last[ts[0]] = (None, None)
        faces.append(FaceCycle(list(ts), bnd, face.is_outer))

    for t in inst1.terminals:
        pts = model.points(t) if g1.degree(t) else []
        pos = {pt: i for i, pt in enumerate(pts)}
        n = len(pts)
        items = []
        for sid, p in model.strands.items():
            if t not in p.endpoints:
                continue
            a, b = model.chord(sid, t)
            other = b if a == TPOINT else a
            key = (pos[other] - pos[TPOINT]) % n
            piece = pieces[sid][0] if p.vertices[0] == t else pieces[sid][-1]
            items.append((key, piece))
        items.sort()
        first, last = first_last[t]
        rot = [piece for _, piece in items]
        if first is not None:
            rot = [first] + rot + [last]
        rotation[t] = rot

    vertices = list(inst1.terminals) + sorted(crossing_vertex.values())
    outer_r = next((r for r, f in enumerate(faces) if f.is_outer), 0)
    t0 = faces[outer_r].terminals[0] if faces else None
    outer_dart = (t0, rotation[t0][0]) if t0 is not None and rotation.get(t0) else None
    gp = PlanarGraph(vertices, edges, rotation, outer_dart, allow_zero=True)
    if not gp.euler_ok():
        raise NonPlanarRotation("simplified graph fails Euler's formula")
    return SimplifiedInstance(gp, faces, strands, dict(model.pair_strand), crossing_vertex,
                              provenance, dict(distances))


def audit_simplified(si: SimplifiedInstance) -> None:
    """Distance preservation and single transversal crossings."""
    g = si.graph
    for s in si.terminals:
        key, _ = shortest_path_tree(g, s)
        for t in si.terminals:
            if t != s and key[t][0] != si.distances[(s, t)]:
                raise PropertyViolation(f"distance {s}-{t} changed: {key[t][0]} vs {si.distances[(s, t)]}")
    corners = si.corners()
    ids = sorted(si.strands)
    for i, a in enumerate(ids):
        pa = si.strands[a]
        for b in ids[i + 1:]:
            pb = si.strands[b]
            if set(pa.endpoints) & set(pb.endpoints):
                if (set(pa.vertices) & set(pb.vertices)) - set(pa.endpoints):
                    raise PropertyViolation(f"strands {a},{b} touch away from their common end")
                continue
            n = count_crossings(g, pa.vertices, pa.edges, pb.vertices, pb.edges, corners)
            expect = 1 if (a, b) in si.crossings else 0
            if n != expect or len(set(pa.vertices) & set(pb.vertices)) != expect:
                raise PropertyViolation(f"strands {a},{b}: {n} crossings, registry says {expect}")


def simplify(inst: TerminalInstance, seed: int = 0, audit: bool = True) -> SimplifiedInstance:
    """Chords, then redraw; the whole preprocessing stage."""
    distances = all_terminal_distances(inst)
    inst1 = enforce_face_cycles(inst, distances)
    return uncross_shortest_paths(inst1, distances, seed=seed, audit=audit)
