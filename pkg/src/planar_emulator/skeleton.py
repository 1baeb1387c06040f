"""The skeleton arrangement and the bad-pair elimination loop.

The arrangement keeps, for every critical strand, the ordered list of the
strands it crosses (from its lower-face end to its higher-face end) and the
sign of every crossing: ``sign(A, B) = +1`` when ``B`` leaves to the left of
``A``.  Rerouting only edits these lists.  ``to_graph`` turns the current
state into an embedded graph whose vertices are terminals and crossings.

A *one-bend path* is a pair ``(A, B)`` of crossing strands between the same
two faces, ``A`` primary from its lower-face end, ``B`` primary from its
higher-face end and ``sign(A, B) > 0``; it runs along ``A`` up to the
crossing and then along ``B``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from .critical import CriticalPathSet, critical_strands
from .errors import ConvergenceCapExceeded, NonPlanarRotation, PropertyViolation
from .graph_core import Edge, PlanarGraph, enclosed_faces, pair_key
from .preprocess import SimplifiedInstance
from .topology import count_crossings

log = logging.getLogger(__name__)

OneBend = Tuple[int, int]


@dataclass
class BadPair:
    p: int
    q: OneBend
    h: int
    i: int


@dataclass
class Skeleton:
    """H*: the embedded skeleton, its canonical paths and construction stats."""

    graph: PlanarGraph
    terminals: List[int]
    faces: List[List[int]]
    boundary: List[List[int]]
    canonical: Dict[Tuple[int, int], List[int]]
    crossing_vertex: Dict[Tuple[int, int], int]
    stats: Dict = field(default_factory=dict)


class Arrangement:
    def __init__(self, si: SimplifiedInstance, cps: CriticalPathSet):
        self.si = si
        self.fi = si.face_index()
        self.ids = critical_strands(si, cps)
        cset = set(self.ids)
        self.ends = {s: si.strands[s].endpoints for s in self.ids}
        self.primary_from: Set[Tuple[int, int]] = set()
        for (t, _), segs in cps.segments.items():
            for seg in segs:
                self.primary_from.add((t, si.pair_strand[pair_key(t, seg.primary)]))
        owner = {}
        for pair, v in si.crossings.items():
            owner[v] = pair
        self.order: Dict[int, List[int]] = {}
        for s in self.ids:
            seq = []
            for v in si.strands[s].vertices[1:-1]:
                pair = owner.get(v)
                if pair is None:
                    continue
                o = pair[0] if pair[1] == s else pair[1]
                if o in cset:
                    seq.append(o)
            self.order[s] = seq
        self.signs: Dict[Tuple[int, int], int] = {}
        for pair in si.crossings:
            if pair[0] in cset and pair[1] in cset:
                self.signs[pair] = si.crossing_sign(*pair)
        # cyclic order of strands and boundary edges at every terminal
        edge_item = {}
        for r, face in enumerate(si.faces):
            for j, e in enumerate(face.boundary):
                edge_item[e] = ("b", r, j)
        for s in self.ids:
            p = si.strands[s]
            edge_item[p.edges[0]] = ("s", s)
            edge_item[p.edges[-1]] = ("s", s)
        self.term_items: Dict[int, list] = {}
        for t in si.terminals:
            items = []
            for e in si.graph.rotation[t]:
                it = edge_item.get(e)
                if it is not None and (it[0] == "b" or t in self.ends[it[1]]):
                    items.append(it)
            self.term_items[t] = items
        self.canon: Dict[Tuple[int, int], Tuple[int, Optional[int]]] = {}
        self._graph_cache = None

    # -- basic queries -----------------------------------------------------
    def tail(self, s: int) -> int:
        return self.ends[s][0]

    def head(self, s: int) -> int:
        return self.ends[s][1]

    def faces_of(self, s: int) -> Tuple[int, int]:
        return self.fi[self.tail(s)], self.fi[self.head(s)]

    def sgn(self, a: int, b: int) -> int:
        if a < b:
            return self.signs[(a, b)]
        return -self.signs[(b, a)]

    def set_sgn(self, a: int, b: int, val: int) -> None:
        if a < b:
            self.signs[(a, b)] = val
        else:
            self.signs[(b, a)] = -val

    def crosses(self, a: int, b: int) -> bool:
        return pair_key(a, b) in self.signs

    def pos(self, s: int, other: int) -> int:
        return self.order[s].index(other)

    def crossing_pairs(self) -> Set[Tuple[int, int]]:
        return set(self.signs)

    def invalidate(self) -> None:
        self._graph_cache = None

    # -- one-bend paths ----------------------------------------------------
    def is_one_bend(self, a: int, b: int) -> bool:
        return (a != b and self.faces_of(a) == self.faces_of(b)
                and (self.tail(a), a) in self.primary_from
                and (self.head(b), b) in self.primary_from
                and self.crosses(a, b) and self.sgn(a, b) > 0)

    def one_bend_paths(self) -> List[OneBend]:
        out = []
        heads = [s for s in self.ids if (self.head(s), s) in self.primary_from]
        for a in self.ids:
            if (self.tail(a), a) not in self.primary_from:
                continue
            for b in heads:
                if self.is_one_bend(a, b):
                    out.append((a, b))
        return out

    def on_q(self, q: OneBend, p: int) -> Tuple[bool, bool]:
        """Whether ``p`` crosses the first and the second leg of ``q``."""
        a, b = q
        first = self.crosses(p, a) and self.pos(a, p) < self.pos(a, b)
        second = self.crosses(p, b) and self.pos(b, p) > self.pos(b, a)
        return first, second

    def q_endpoints(self, q: OneBend) -> Tuple[int, int]:
        return self.tail(q[0]), self.head(q[1])

    def double_crossers(self, q: OneBend) -> List[int]:
        """Critical strands forming a bad pair with the one-bend path ``q``."""
        ends = set(self.q_endpoints(q))
        faces = self.faces_of(q[0])
        out = []
        for p in self.ids:
            if p in q or self.faces_of(p) != faces or ends & set(self.ends[p]):
                continue
            if all(self.on_q(q, p)):
                out.append(p)
        return out

    def make_bad_pair(self, p: int, q: OneBend) -> BadPair:
        a, b = q
        pa, pb = self.pos(p, a), self.pos(p, b)
        return BadPair(p, q, a if pa < pb else b, b if pa < pb else a)

    # -- geometry of the current drawing -------------------------------------
    def graph(self):
        if self._graph_cache is None:
            self._graph_cache = self._build_graph()
        return self._graph_cache

    def _build_graph(self):
        si = self.si
        next_v = max(si.terminals) + 1 if si.terminals else 0
        xv: Dict[Tuple[int, int], int] = {}
        for pair in sorted(self.signs):
            xv[pair] = next_v
            next_v += 1
        edges: List[Edge] = []
        eid = 0
        svert: Dict[int, List[int]] = {}
        sedge: Dict[int, List[int]] = {}
        for s in self.ids:
            vs = [self.tail(s)] + [xv[pair_key(s, o)] for o in self.order[s]] + [self.head(s)]
            es = []
            for i in range(len(vs) - 1):
                edges.append(Edge(eid, vs[i], vs[i + 1], 1))
                es.append(eid)
                eid += 1
            svert[s], sedge[s] = vs, es
        bnd: Dict[Tuple[int, int], int] = {}
        for r, face in enumerate(si.faces):
            ts = face.terminals
            m = len(ts)
            if m < 2:
                continue
            for j in range(m):
                edges.append(Edge(eid, ts[j], ts[(j + 1) % m], 1))
                bnd[(r, j)] = eid
                eid += 1
        rotation: Dict[int, List[int]] = {}
        for (a, b), x in xv.items():
            ia, ib = svert[a].index(x), svert[b].index(x)
            af, ab = sedge[a][ia], sedge[a][ia - 1]
            bf, bb = sedge[b][ib], sedge[b][ib - 1]
            rotation[x] = [af, bf, ab, bb] if self.signs[(a, b)] > 0 else [af, bb, ab, bf]
        for t in si.terminals:
            rot = []
            for it in self.term_items[t]:
                if it[0] == "b":
                    rot.append(bnd[(it[1], it[2])])
                else:
                    s = it[1]
                    rot.append(sedge[s][0] if self.tail(s) == t else sedge[s][-1])
            rotation[t] = rot
        vertices = list(si.terminals) + list(xv.values())
        g = PlanarGraph(vertices, edges, rotation, allow_zero=True)
        if not g.euler_ok():
            raise NonPlanarRotation("skeleton rotation fails Euler's formula")
        holes = []
        for face in si.faces:
            t = face.terminals[0]
            holes.append(g.face_of_dart(t, rotation[t][0]) if rotation[t] else None)
        return g, xv, svert, sedge, bnd, holes

    def _leg(self, s: int, start: int, stop: int) -> List[int]:
        """Edges of strand ``s`` between two of its vertices, in walking order."""
        _, _, svert, sedge, _, _ = self.graph()
        vs, es = svert[s], sedge[s]
        i, j = vs.index(start), vs.index(stop)
        if i <= j:
            return es[i:j]
        return es[j:i][::-1]

    def _face_arc(self, r: int, x: int, y: int, forward: bool) -> List[int]:
        _, _, _, _, bnd, _ = self.graph()
        ts = self.si.faces[r].terminals
        m = len(ts)
        i, j = ts.index(x), ts.index(y)
        out = []
        if forward:
            while i != j:
                out.append(bnd[(r, i)])
                i = (i + 1) % m
        else:
            while i != j:
                out.append(bnd[(r, (i - 1) % m)])
                i = (i - 1) % m
        return out

    def _wing(self, legs: List[int], r: int, x: int, y: int, other: int) -> Optional[Set[int]]:
        """Region cut off by ``legs`` plus an arc of face ``r`` from ``x`` to ``y``."""
        g, _, _, _, _, holes = self.graph()
        if x == y:
            return set()
        options = []
        for fwd in (True, False):
            cyc = legs + self._face_arc(r, x, y, fwd)
            region = enclosed_faces(g, cyc, seed_face=holes[r])
            if holes[other] not in region:
                options.append(region)
        if not options:
            return None
        return min(options, key=len)

    def is_safe(self, q: OneBend) -> bool:
        """No terminal hole lies between the two strands of a one-bend path."""
        a, b = q
        g, xv, _, _, _, holes = self.graph()
        d = xv[pair_key(a, b)]
        ra, rb = self.faces_of(a)
        low = self._wing(self._leg(a, self.tail(a), d) + self._leg(b, d, self.tail(b)),
                         ra, self.tail(b), self.tail(a), rb)
        high = self._wing(self._leg(b, self.head(b), d) + self._leg(a, d, self.head(a)),
                          rb, self.head(a), self.head(b), ra)
        if low is None or high is None:
            return False
        region = low | high
        return not any(h is not None and h in region for h in holes)

    # -- counting ------------------------------------------------------------
    def bad_pair_count(self) -> int:
        """Bad pairs over all safe one-bend paths."""
        n = 0
        for q in self.one_bend_paths():
            c = len(self.double_crossers(q))
            if c and self.is_safe(q):
                n += c
        return n

    def canonical_q(self, pair: Tuple[int, int]) -> Tuple[int, Optional[int]]:
        return self.canon[pair]

    def find_canonical_bad_pair(self) -> Optional[BadPair]:
        for pair in sorted(self.canon):
            a, b = self.canon[pair]
            if b is None:
                continue
            crossers = self.double_crossers((a, b))
            if crossers:
                return self.make_bad_pair(min(crossers), (a, b))
        return None

    # -- minimalization ------------------------------------------------------
    def _between(self, s: int, x: int, y: int) -> List[int]:
        """Strands crossing ``s`` strictly between its crossings with ``x`` and ``y``."""
        i, j = self.pos(s, x), self.pos(s, y)
        lo, hi = min(i, j), max(i, j)
        return self.order[s][lo + 1:hi]

    def minimalize(self, bp: BadPair) -> Tuple[BadPair, int]:
        cap = len(self.ids) ** 2
        steps = 0
        while True:
            changed = self._shrink_by_strand(bp) or self._shrink_by_primary(bp)
            if changed is None:
                return bp, steps
            bp = changed
            steps += 1
            if steps > cap:
                raise ConvergenceCapExceeded(f"minimalize exceeded {cap} steps")

    def _shrink_by_strand(self, bp: BadPair) -> Optional[BadPair]:
        xh, xi = bp.h, bp.i
        faces = self.faces_of(bp.p)
        on_h = set(self._between(xh, bp.p, xi))
        on_i = set(self._between(xi, xh, bp.p))
        for r in sorted(on_h & on_i):
            if r != bp.p and self.faces_of(r) == faces:
                return self.make_bad_pair(r, bp.q)
        return None

    def _shrink_by_primary(self, bp: BadPair) -> Optional[BadPair]:
        p = bp.p
        a_q, b_q = bp.q
        for x in self.ends[p]:
            if (x, p) not in self.primary_from:
                continue
            from_tail = x == self.tail(p)
            for r in sorted(self._between(p, bp.h, bp.i)):
                if self.faces_of(r) != self.faces_of(p):
                    continue
                if from_tail:
                    q1 = (p, r)
                    new_q = (a_q, r)
                else:
                    q1 = (r, p)
                    new_q = (r, b_q)
                if not self.is_one_bend(*q1) or not self.is_one_bend(*new_q):
                    continue
                if not self.is_safe(q1):
                    continue
                if set(self.q_endpoints(new_q)) & set(self.ends[p]):
                    continue
                if not all(self.on_q(new_q, p)):
                    log.debug("candidate %s skipped: new pair is not bad", r)
                    continue
                return self.make_bad_pair(p, new_q)
        return None

    # -- rerouting -------------------------------------------------------------
    def reroute(self, bp: BadPair) -> None:
        p, xh, xi = bp.p, bp.h, bp.i
        op = self.order[p]
        ih, ii = op.index(xh), op.index(xi)
        if ih > ii:
            raise PropertyViolation("h must precede i along the rerouted strand")
        bottom = op[ih + 1:ii]
        oh, oi = self.order[xh], self.order[xi]
        hh, dh = oh.index(p), oh.index(xi)
        ip, di = oi.index(p), oi.index(xh)
        arm_h = oh[hh + 1:dh] if hh < dh else oh[dh + 1:hh][::-1]
        arm_i = oi[di + 1:ip] if di < ip else oi[ip + 1:di][::-1]
        if set(arm_h) & set(arm_i) or set(bottom) != set(arm_h) | set(arm_i) or len(bottom) != len(arm_h) + len(arm_i):
            raise PropertyViolation(f"strands crossing the triangle of {p} do not split over its arms")
        tau_h = 1 if dh < hh else -1
        tau_i = 1 if di < ip else -1
        sigma = tau_h * tau_i * self.sgn(xh, xi)
        for y in arm_h:
            self.set_sgn(p, y, self.sgn(xh, y) * (1 if hh < dh else -1))
        for y in arm_i:
            self.set_sgn(p, y, self.sgn(xi, y) * (1 if di < ip else -1))
        self.set_sgn(p, xi, -tau_i * sigma)
        self.set_sgn(p, xh, -tau_h * sigma)
        self.order[p] = op[:ih] + arm_h + [xi, xh] + arm_i + op[ii + 1:]
        for arm, x in ((arm_h, xh), (arm_i, xi)):
            for y in arm:
                oy = self.order[y]
                old, k0 = oy.index(p), oy.index(x)
                oy.remove(p)
                k = oy.index(x)
                oy.insert(k + 1 if old < k0 else k, p)
        for s, near, d in ((xh, hh < dh, xi), (xi, ip < di, xh)):
            os_ = self.order[s]
            os_.remove(p)
            k = os_.index(d)
            os_.insert(k + 1 if near else k, p)
        self.invalidate()

    # -- export ------------------------------------------------------------------
    def canonical_edges(self, pair: Tuple[int, int]) -> Tuple[List[int], List[int]]:
        """Vertices and edges of a canonical path in the current graph."""
        _, xv, svert, sedge, _, _ = self.graph()
        a, b = self.canon[pair]
        if b is None:
            vs, es = svert[a], sedge[a]
            if vs[0] != pair[0]:
                vs, es = vs[::-1], es[::-1]
            return list(vs), list(es)
        d = xv[pair_key(a, b)]
        ia = svert[a].index(d)
        ib = svert[b].index(d)
        return svert[a][:ia] + svert[b][ib:], sedge[a][:ia] + sedge[b][ib:]


def build_initial(si: SimplifiedInstance, cps: CriticalPathSet) -> Arrangement:
    from .critical import primary_target
    arr = Arrangement(si, cps)
    terms = si.terminals
    for i, s in enumerate(terms):
        for t in terms[i + 1:]:
            if arr.fi[s] == arr.fi[t]:
                continue
            lo, hi = (s, t) if arr.fi[s] < arr.fi[t] else (t, s)
            a = primary_target(si, cps, lo, hi)
            b = primary_target(si, cps, hi, lo)
            if a == hi:
                arr.canon[(lo, hi)] = (si.pair_strand[pair_key(lo, hi)], None)
            elif b == lo:
                arr.canon[(lo, hi)] = (si.pair_strand[pair_key(lo, hi)], None)
            else:
                sa, sb = si.pair_strand[pair_key(lo, a)], si.pair_strand[pair_key(hi, b)]
                if not arr.crosses(sa, sb):
                    raise PropertyViolation(f"canonical primaries of {lo},{hi} do not cross")
                if arr.sgn(sa, sb) <= 0:
                    raise PropertyViolation(f"canonical path {lo},{hi} bends the wrong way")
                arr.canon[(lo, hi)] = (sa, sb)
    return arr


def audit_canonical_crossings(arr: Arrangement) -> List[Tuple]:
    """Canonical pairs whose crossing count disagrees with the simplified graph."""
    g = arr.graph()[0]
    corners = {t: g.rotation[t][0] for t in arr.si.terminals if g.rotation[t]}
    paths = {pair: arr.canonical_edges(pair) for pair in arr.canon}
    keys = sorted(paths)
    bad = []
    for i, p1 in enumerate(keys):
        for p2 in keys[i + 1:]:
            if set(p1) & set(p2):
                continue
            v1, e1 = paths[p1]
            v2, e2 = paths[p2]
            n = count_crossings(g, v1, e1, v2, e2, corners)
            s1 = arr.si.pair_strand[pair_key(*p1)]
            s2 = arr.si.pair_strand[pair_key(*p2)]
            want = 1 if pair_key(s1, s2) in arr.si.crossings else 0
            if n != want:
                bad.append((p1, p2, n, want))
    return bad


def eliminate_all(arr: Arrangement, audit_every: int = 1, events: Optional[list] = None) -> Dict:
    """Run find / minimalize / reroute until no canonical bad pair remains."""
    count = arr.bad_pair_count()
    initial = count
    cap = initial + 1
    iters = 0
    min_steps = 0
    history = [count]
    while True:
        bp = arr.find_canonical_bad_pair()
        if bp is None:
            break
        iters += 1
        if iters > cap:
            raise ConvergenceCapExceeded(f"elimination exceeded {cap} iterations")
        bp, steps = arr.minimalize(bp)
        min_steps += steps
        before = arr.crossing_pairs()
        arr.reroute(bp)
        if arr.crossing_pairs() != before:
            raise PropertyViolation("reroute changed which strands cross")
        if audit_every and iters % audit_every == 0:
            new = arr.bad_pair_count()
            if new >= count:
                raise PropertyViolation(f"bad-pair count did not decrease ({count} -> {new})")
            count = new
            history.append(count)
        if events is not None:
            events.append({"event": "reroute", "iteration": iters, "strand": bp.p,
                           "q": list(bp.q), "minimalize_steps": steps})
    return {"initial_bad_pairs": initial, "iterations": iters,
            "minimalize_steps": min_steps, "bad_pair_history": history}


def to_graph(arr: Arrangement, stats: Optional[Dict] = None) -> Skeleton:
    g, xv, _, _, bnd, _ = arr.graph()
    si = arr.si
    canonical = {pair: arr.canonical_edges(pair)[1] for pair in sorted(arr.canon)}
    boundary = []
    for r, face in enumerate(si.faces):
        m = len(face.terminals)
        boundary.append([bnd[(r, j)] for j in range(m)] if m >= 2 else [])
    return Skeleton(g, list(si.terminals), [list(f.terminals) for f in si.faces], boundary,
                    canonical, dict(xv), dict(stats or {}))


def build_skeleton(si: SimplifiedInstance, cps: CriticalPathSet, audit_every: int = 1,
                   events: Optional[list] = None) -> Skeleton:
    arr = build_initial(si, cps)
    stats = {"critical_strands": len(arr.ids), "initial_crossings": len(arr.signs)}
    stats.update(eliminate_all(arr, audit_every, events))
    if arr.find_canonical_bad_pair() is not None:
        raise PropertyViolation("canonical bad pair left after elimination")
    mismatches = audit_canonical_crossings(arr)
    stats["canonical_crossing_mismatches"] = len(mismatches)
    if mismatches:
        raise PropertyViolation(f"canonical crossing pattern differs on {len(mismatches)} pairs, e.g. {mismatches[0]}")
    return to_graph(arr, stats)
