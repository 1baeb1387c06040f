"""Critical paths, their pairing, primary tags and canonical paths.

For a terminal ``t`` and a foreign face with terminals ``c_0 .. c_{m-1}``
read with the face on the right (clockwise as seen from inside the face), position ``j`` is *equivalent* when the closed curve
``t -> c_j``, boundary edge ``c_j c_{j+1}``, ``c_{j+1} -> t`` encloses no
hole of any terminal face (seen from the foreign face's own hole).  The
non-equivalent positions cut the face into segments; the two strands to the
ends of a segment are paired critical paths.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import NoBend, PropertyViolation
from .graph_core import TerminalPath, enclosed_faces, pair_key
from .preprocess import SimplifiedInstance


@dataclass
class Segment:
    """Clockwise run ``start .. end`` (positions) of a foreign face governed by one pair."""

    face: int
    start: int
    end: int
    primary: int
    secondary: int

    def positions(self, m: int) -> List[int]:
        out = [self.start]
        j = self.start
        while j != self.end:
            j = (j + 1) % m
            out.append(j)
        return out


@dataclass
class CriticalPathSet:
    segments: Dict[Tuple[int, int], List[Segment]] = field(default_factory=dict)
    equivalence: Dict[Tuple[int, int], List[bool]] = field(default_factory=dict)

    def critical_targets(self, t: int) -> List[int]:
        """Distinct critical endpoints reached from ``t`` (by terminal id)."""
        out = []
        for (s, _), segs in self.segments.items():
            if s != t:
                continue
            for seg in segs:
                for c in (seg.primary, seg.secondary):
                    if c not in out:
                        out.append(c)
        return out

    def count(self, t: int) -> int:
        """Critical paths from ``t``, counting each paired path once per segment end."""
        n = 0
        for (s, _), segs in self.segments.items():
            if s == t:
                n += len({x for seg in segs for x in (seg.primary, seg.secondary)})
        return n

    def segment_of(self, t: int, r: int, target_pos: int) -> Segment:
        for seg in self.segments[(t, r)]:
            if seg.start <= seg.end:
                if seg.start <= target_pos <= seg.end:
                    return seg
            elif target_pos >= seg.start or target_pos <= seg.end:
                return seg
        raise PropertyViolation(f"position {target_pos} of face {r} not governed for {t}")


@dataclass
class CanonicalPath:
    endpoints: Tuple[int, int]
    bend: int
    first: TerminalPath
    second: TerminalPath
    vertices: List[int]
    edges: List[int]


def _hole_faces(si: SimplifiedInstance) -> List[Optional[int]]:
    return [si.hole_face(r) for r in range(len(si.faces))]


def equivalent(si: SimplifiedInstance, t: int, r: int, j: int,
               holes: Optional[List[Optional[int]]] = None) -> bool:
    """Whether position ``j`` of face ``r`` is equivalent as seen from ``t``."""
    ts, bnd = si.walk_order(r)
    m = len(ts)
    if m < 2:
        return True
    if holes is None:
        holes = _hole_faces(si)
    a, b = ts[j], ts[(j + 1) % m]
    cycle = si.strand(t, a).edges + [bnd[j]] + si.strand(b, t).edges
    region = enclosed_faces(si.graph, cycle, seed_face=holes[r])
    return not any(h is not None and h in region for q, h in enumerate(holes) if q != r)


def critical_paths_from(si: SimplifiedInstance, t: int, cps: Optional[CriticalPathSet] = None,
                        holes: Optional[List[Optional[int]]] = None) -> CriticalPathSet:
    cps = cps if cps is not None else CriticalPathSet()
    if holes is None:
        holes = _hole_faces(si)
    rstar = si.face_index()[t]
    for r in range(len(si.faces)):
        if r == rstar:
            continue
        ts, _ = si.walk_order(r)
        m = len(ts)
        if m == 1:
            cps.segments[(t, r)] = [Segment(r, 0, 0, ts[0], ts[0])]
            cps.equivalence[(t, r)] = []
            continue
        eq = [equivalent(si, t, r, j, holes) for j in range(m)]
        cps.equivalence[(t, r)] = eq
        cuts = [j for j in range(m) if not eq[j]]
        if not cuts:
            raise PropertyViolation(f"terminal {t}: every position of face {r} is equivalent")
        segs = []
        for i, j in enumerate(cuts):
            nxt = cuts[(i + 1) % len(cuts)]
            start, end = (j + 1) % m, nxt
            a, b = ts[start], ts[end]
            primary, secondary = classify_primary(rstar, r, a, b)
            segs.append(Segment(r, start, end, primary, secondary))
        cps.segments[(t, r)] = segs
    return cps


def classify_primary(rstar: int, r: int, a: int, b: int) -> Tuple[int, int]:
    """``(primary, secondary)`` endpoints for a pair governing clockwise ``a .. b``."""
    return (a, b) if rstar < r else (b, a)


def compute_critical(si: SimplifiedInstance) -> CriticalPathSet:
    cps = CriticalPathSet()
    holes = _hole_faces(si)
    for t in si.terminals:
        critical_paths_from(si, t, cps, holes)
    return cps


def critical_strands(si: SimplifiedInstance, cps: CriticalPathSet) -> List[int]:
    """Strand ids of all critical paths, each once."""
    out = set()
    for (t, _), segs in cps.segments.items():
        for seg in segs:
            for c in (seg.primary, seg.secondary):
                out.add(si.pair_strand[pair_key(t, c)])
    return sorted(out)


def primary_target(si: SimplifiedInstance, cps: CriticalPathSet, t: int, other: int) -> int:
    """Endpoint of ``t``'s primary toward the segment containing ``other``."""
    fi = si.face_index()
    r = fi[other]
    pos = si.walk_order(r)[0].index(other)
    return cps.segment_of(t, r, pos).primary


def canonical_path(si: SimplifiedInstance, cps: CriticalPathSet, t: int, t2: int) -> CanonicalPath:
    """The one-bend path between terminals on different faces."""
    fi = si.face_index()
    if fi[t] > fi[t2]:
        t, t2 = t2, t
    a = primary_target(si, cps, t, t2)
    b = primary_target(si, cps, t2, t)
    p1 = si.strand(t, a)
    p2 = si.strand(t2, b)
    if a == t2:
        bend = t2
    elif b == t:
        bend = t
    else:
        s1, s2 = si.pair_strand[pair_key(t, a)], si.pair_strand[pair_key(t2, b)]
        bend = si.crossings.get(pair_key(s1, s2))
        if bend is None:
            raise NoBend(f"primaries {t}->{a} and {t2}->{b} do not cross")
    if bend == t2:
        verts, edges = list(p1.vertices), list(p1.edges)
    elif bend == t:
        rev = p2.reversed()
        verts, edges = list(rev.vertices), list(rev.edges)
    else:
        i = p1.vertices.index(bend)
        k = p2.vertices.index(bend)
        tail = p2.reversed()
        kk = len(p2.vertices) - 1 - k
        verts = p1.vertices[:i + 1] + tail.vertices[kk + 1:]
        edges = p1.edges[:i] + tail.edges[kk:]
    return CanonicalPath((t, t2), bend, p1, p2, verts, edges)


def canonical_paths(si: SimplifiedInstance, cps: CriticalPathSet) -> Dict[Tuple[int, int], CanonicalPath]:
    fi = si.face_index()
    out = {}
    terms = si.terminals
    for i, s in enumerate(terms):
        for t in terms[i + 1:]:
            if fi[s] != fi[t]:
                cp = canonical_path(si, cps, s, t)
                out[cp.endpoints] = cp
    return out


def split_positions(si: SimplifiedInstance, cps: CriticalPathSet, r: int, q: int) -> List[List[int]]:
    """Non-equivalent positions on face ``q`` for every terminal of face ``r``.

    Both the terminals of ``r`` and the positions on ``q`` use the plain
    clockwise order of the plane, position ``j`` meaning the pair
    ``(c_j, c_{j+1})``.
    """
    m = len(si.faces[q].terminals)
    out = []
    for t in si.faces[r].terminals:
        eq = cps.equivalence[(t, q)]
        js = [j for j, e in enumerate(eq) if not e]
        if si.faces[q].is_outer:
            js = sorted((m - 2 - j) % m for j in js)
        out.append(js)
    return out


def split_monotone(splits: List[int], m: int) -> bool:
    """Clockwise terminals have clockwise split positions: one lap at most."""
    n = len(splits)
    if n < 2:
        return True
    total = sum((splits[(i + 1) % n] - splits[i]) % m for i in range(n))
    return total in (0, m)
