"""Seeded benchmark instances: grids with rectangular holes.

Vertex ``(x, y)`` of a ``width x height`` grid gets id ``y * width + x`` and
the y axis points up.  ``grid-ring`` instances use plain grid edges;
``random-planar`` instances additionally put one random diagonal into some
cells.  Every hole is a rectangle of removed cells, separated from the
outer boundary and from the other holes, so all designated faces are simple
cycles.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import SpecInfeasible
from .graph_core import Edge, PlanarGraph, TerminalFace, TerminalInstance, clockwise_vertices

KINDS = ("grid-ring", "random-planar")


@dataclass
class InstanceSpec:
    kind: str = "grid-ring"
    width: int = 8
    height: int = 8
    f: int = 2
    terminals: Optional[List[int]] = None
    k: int = 8
    weights: str = "int"
    max_weight: int = 9
    diagonal_prob: float = 0.3
    seed: int = 1

    def per_face(self) -> List[int]:
        if self.terminals is not None:
            if len(self.terminals) != self.f:
                raise SpecInfeasible("one terminal count per face is required")
            return list(self.terminals)
        if self.k < self.f:
            raise SpecInfeasible("need at least one terminal per face")
        base, extra = divmod(self.k, self.f)
        return [base + (1 if r < extra else 0) for r in range(self.f)]

    @classmethod
    def from_dict(cls, d: Dict) -> "InstanceSpec":
        known = {k: v for k, v in d.items() if k in cls.__dataclass_fields__}
        return cls(**known)

    def to_dict(self) -> Dict:
        return asdict(self)


def _hole_rects(spec: InstanceSpec, rng: random.Random) -> List[Tuple[int, int, int, int]]:
    """Rectangles ``(x0, y0, x1, y1)`` of removed cells, pairwise separated."""
    holes = spec.f - 1
    if holes == 0:
        return []
    w, h = spec.width, spec.height
    # split the interior into vertical bands, one hole per band
    usable = w - 2
    band = usable // holes
    if band < 4 or h < 6:
        raise SpecInfeasible(f"a {w}x{h} grid cannot host {holes} separated holes")
    rects = []
    for i in range(holes):
        lo = 1 + i * band
        hi = lo + band - 1
        x0 = rng.randint(lo, hi - 3)
        x1 = rng.randint(x0 + 2, hi - 1)
        y0 = rng.randint(1, h - 5)
        y1 = rng.randint(y0 + 2, h - 2)
        rects.append((x0, y0, x1, y1))
    return rects


_DIRS = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]


def grid_graph(spec: InstanceSpec, rng: random.Random):
    """The grid with holes; returns the graph and the list of hole rectangles."""
    w, h = spec.width, spec.height
    if w < 2 or h < 2:
        raise SpecInfeasible("grid must be at least 2x2")
    if w * h > 400:
        raise SpecInfeasible("at most 400 vertices are supported")
    rects = _hole_rects(spec, rng)

    def in_hole_cell(cx, cy):
        return any(x0 <= cx < x1 and y0 <= cy < y1 for x0, y0, x1, y1 in rects)

    def vid(x, y):
        return y * w + x

    removed = set()
    for x0, y0, x1, y1 in rects:
        for x in range(x0 + 1, x1):
            for y in range(y0 + 1, y1):
                removed.add((x, y))

    def weight():
        if spec.weights == "rational":
            return Fraction(rng.randint(1, spec.max_weight * 4), rng.randint(1, 4))
        return Fraction(rng.randint(1, spec.max_weight))

    raw = []
    for y in range(h):
        for x in range(w):
            if (x, y) in removed:
                continue
            if x + 1 < w and (x + 1, y) not in removed:
                if not (in_hole_cell(x, y - 1) and in_hole_cell(x, y)):
                    raw.append(((x, y), (x + 1, y)))
            if y + 1 < h and (x, y + 1) not in removed:
                if not (in_hole_cell(x - 1, y) and in_hole_cell(x, y)):
                    raw.append(((x, y), (x, y + 1)))
    if spec.kind == "random-planar":
        for y in range(h - 1):
            for x in range(w - 1):
                if in_hole_cell(x, y) or rng.random() >= spec.diagonal_prob:
                    continue
                if rng.random() < 0.5:
                    raw.append(((x, y), (x + 1, y + 1)))
                else:
                    raw.append(((x + 1, y), (x, y + 1)))
    elif spec.kind != "grid-ring":
        raise SpecInfeasible(f"unknown generator kind {spec.kind!r}")

    edges = []
    incident: Dict[int, List[Tuple[int, int]]] = {}
    lookup = {}
    for eid, (a, b) in enumerate(raw):
        ea = Edge(eid, vid(*a), vid(*b), weight())
        edges.append(ea)
        lookup[(a, b)] = eid
        lookup[(b, a)] = eid
        incident.setdefault(a, []).append((_DIRS.index((b[0] - a[0], b[1] - a[1])), eid))
        incident.setdefault(b, []).append((_DIRS.index((a[0] - b[0], a[1] - b[1])), eid))
    vertices = [vid(x, y) for y in range(h) for x in range(w) if (x, y) not in removed]
    rotation = {vid(*p): [e for _, e in sorted(inc)] for p, inc in incident.items()}
    g = PlanarGraph(vertices, edges, rotation, outer_dart=(vid(0, 0), lookup[((0, 0), (1, 0))]))
    holes = []
    for x0, y0, x1, y1 in rects:
        holes.append((vid(x0 + 1, y0), lookup[((x0, y0), (x0 + 1, y0))]))
    return g, holes


def gen_instance(spec: InstanceSpec) -> TerminalInstance:
    """Deterministic instance for ``spec``; same seed, same instance."""
    rng = random.Random(spec.seed)
    counts = spec.per_face()
    g, hole_darts = grid_graph(spec, rng)
    if not g.euler_ok():
        raise SpecInfeasible("generated rotation is not planar")
    fids = [g.outer_face()] + [g.face_of_dart(*d) for d in hole_darts]
    faces = []
    used = set()
    for r, fid in enumerate(fids):
        is_outer = r == 0
        cw = clockwise_vertices(g, fid, is_outer)
        order = [v for v, _ in cw]
        simple = [v for v in order if order.count(v) == 1 and v not in used]
        if counts[r] > len(simple):
            raise SpecInfeasible(f"face {r} has only {len(simple)} boundary vertices for {counts[r]} terminals")
        chosen = set(rng.sample(simple, counts[r]))
        terms = [v for v in order if v in chosen]
        used.update(terms)
        corners = {v: e for v, e in g.faces()[fid] if v in chosen}
        faces.append(TerminalFace(terms, corners, is_outer))
    inst = TerminalInstance(g, faces, {"spec": spec.to_dict()})
    inst.validate()
    return inst


def suite(n: int = 50, seed: int = 0, max_k: int = 12) -> List[InstanceSpec]:
    """A mixed list of instance specs covering both kinds and f in {1, 2, 3}."""
    rng = random.Random(seed)
    specs = []
    for i in range(n):
        f = 1 + i % 3
        kind = KINDS[(i // 3) % 2]
        width = rng.randint(6 + 3 * (f - 1), 9 + 3 * (f - 1))
        height = rng.randint(6, 9)
        k = rng.randint(max(f, 2 * f), max_k)
        specs.append(InstanceSpec(kind=kind, width=width, height=height, f=f, k=k,
                                  weights="rational" if i % 5 == 4 else "int",
                                  seed=1000 + i))
    return specs


def two_ring(seed: int = 1) -> TerminalInstance:
    """The fixed two-face instance used by many tests."""
    return gen_instance(InstanceSpec(kind="grid-ring", width=7, height=7, f=2, k=8, seed=seed))

