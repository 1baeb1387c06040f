"""Put the pieces together: weigh the skeleton, build per-face grids, glue.

The skeleton H* carries one boundary cycle per terminal face; those cycle
edges only mark where a face sits and never enter the weight LP.  Gluing
drops them and splices each face's quarter grid into the gap they leave at
every terminal.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .critical import CriticalPathSet, compute_critical
from .errors import LPInfeasible, OrderMismatch
from .graph_core import Edge, PlanarGraph, TerminalInstance
from .oneface import Emulator, oneface_emulator
from .preprocess import SimplifiedInstance, simplify
from .skeleton import Skeleton, build_skeleton
from .weights import solve

log = logging.getLogger(__name__)


def _targets(distances: Dict[Tuple[int, int], Fraction]) -> Dict[Tuple[int, int], Fraction]:
    out = {}
    for (a, b), d in distances.items():
        key = (a, b) if a < b else (b, a)
        out.setdefault(key, Fraction(d))
    return out


def weigh_skeleton(sk: Skeleton, distances: Dict[Tuple[int, int], Fraction],
                   engine: str = "auto", cap: Optional[int] = None) -> Emulator:
    """H* with LP weights.  Boundary edges stay in the graph, tagged ``boundary``."""
    skip = {e for b in sk.boundary for e in b}
    targets = _targets(distances)
    stats: Dict = {"lp_rounds": 0, "lp_generated": 0, "lp_pivots": 0, "engine": None}
    weights: Dict[int, Fraction] = {}
    if sk.canonical:
        res = solve(sk.graph, sk.canonical, targets, equality_pairs=list(sk.canonical),
                    skip=skip, cap=cap, engine=engine)
        if not res.feasible:
            raise LPInfeasible("no skeleton weights reproduce the inter-face distances", res.certificate)
        weights = res.weights
        stats.update(lp_rounds=res.rounds, lp_generated=res.generated, lp_pivots=res.pivots, engine=res.engine)
    w = {e: (Fraction(1) if e in skip else weights.get(e, Fraction(1))) for e in sk.graph.edges}
    g = sk.graph.with_weights(w)
    prov = {e: ("boundary" if e in skip else "hstar") for e in g.edges}
    return Emulator(g, {t: t for t in sk.terminals}, prov, stats)


def _hole_darts(g: PlanarGraph, faces: Sequence[Sequence[int]]) -> List[Dict[int, int]]:
    """For each terminal face, the dart at each terminal that opens onto its hole.

    Skeleton rotations at a terminal start right after the hole, so the
    hole is the face of the first dart of any of its terminals.
    """
    out: List[Dict[int, int]] = []
    for ts in faces:
        if len(ts) < 2 or not g.rotation[ts[0]]:
            out.append({})
            continue
        hole = g.face_of_dart(ts[0], g.rotation[ts[0]][0])
        darts = {v: e for v, e in g.faces()[hole] if v in ts}
        if set(darts) != set(ts):
            raise OrderMismatch("a skeleton face hole does not touch all of its terminals")
        out.append(darts)
    return out


def _splice(rot: List[int], start: int, drop: set, part: List[int]) -> List[int]:
    i = rot.index(start)
    host = [e for e in rot[i:] + rot[:i] if e not in drop]
    return host + part


def glue(hstar: Emulator, faces: Sequence[Sequence[int]], boundary: Sequence[Sequence[int]],
         parts: Sequence[Emulator]) -> Emulator:
    """Merge the per-face emulators into the skeleton.

    ``faces[r]`` lists the terminals of face ``r`` clockwise, ``boundary[r]``
    the skeleton edges of its cycle, and ``parts[r]`` an emulator whose
    terminal map is keyed by those terminals.
    """
    if len(parts) != len(faces):
        raise ValueError("one part per face is required")
    g = hstar.graph
    holes = _hole_darts(g, faces)
    drop = {e for b in boundary for e in b}
    vertices = list(g.vertices)
    edges: Dict[int, Edge] = {e.id: e for e in g.edges.values() if e.id not in drop}
    rotation: Dict[int, List[int]] = {v: [e for e in g.rotation[v] if e not in drop] for v in g.vertices}
    provenance = {e: p for e, p in hstar.provenance.items() if e not in drop}
    next_v = max(vertices) + 1 if vertices else 0
    next_e = max(g.edges) + 1 if g.edges else 0
    part_sizes = []

    for r, (ts, part) in enumerate(zip(faces, parts)):
        missing = [t for t in ts if t not in part.terminal_map]
        if missing or len(part.terminal_map) != len(ts):
            raise OrderMismatch(f"part {r} does not cover the terminals of its face")
        part_sizes.append(len(part.graph.vertices))
        if not part.graph.edges:
            continue
        placed = False
        for pg in (part.graph, part.graph.mirrored()):
            inv = {lv: t for t, lv in part.terminal_map.items()}
            vmap = {}
            nv = next_v
            for v in pg.vertices:
                if v in inv:
                    vmap[v] = inv[v]
                else:
                    vmap[v] = nv
                    nv += 1
            emap = {e: next_e + i for i, e in enumerate(sorted(pg.edges))}
            outer = pg.outer_face()
            new_rot = {vmap[v]: [emap[e] for e in pg.rotation[v]] for v in pg.vertices if v not in inv}
            for lv, t in inv.items():
                prot = pg.rotation[lv]
                if not prot:
                    new_rot[t] = list(rotation[t])
                    continue
                starts = [e for e in prot if pg.face_of_dart(lv, e) == outer]
                if len(starts) != 1:
                    raise OrderMismatch(f"terminal {t} touches the outer face of part {r} more than once")
                j = prot.index(starts[0])
                ordered = [emap[e] for e in prot[j:] + prot[:j]]
                if t in holes[r]:
                    new_rot[t] = _splice(g.rotation[t], holes[r][t], drop, ordered)
                else:
                    new_rot[t] = rotation[t] + ordered
            new_edges = {emap[e.id]: Edge(emap[e.id], vmap[e.u], vmap[e.v], e.w) for e in pg.edges.values()}
            trial_rot = dict(rotation)
            trial_rot.update(new_rot)
            trial_vs = vertices + [vmap[v] for v in pg.vertices if v not in inv]
            trial = PlanarGraph(trial_vs, list(edges.values()) + list(new_edges.values()), trial_rot,
                                allow_zero=True)
            if trial.euler_ok():
                vertices, rotation = trial_vs, trial_rot
                edges.update(new_edges)
                for e in new_edges:
                    provenance[e] = f"oneface {r}"
                next_v, next_e = nv, next_e + len(emap)
                placed = True
                break
        if not placed:
            raise OrderMismatch(f"part {r} cannot be embedded in its face in either orientation")

    h = PlanarGraph(vertices, edges.values(), rotation, allow_zero=True)
    if h.faces():
        h.outer_dart = h.faces()[max(range(len(h.faces())), key=lambda i: len(h.faces()[i]))][0]
    stats = dict(hstar.stats)
    stats["part_vertices"] = part_sizes
    return Emulator(h, dict(hstar.terminal_map), provenance, stats)


@dataclass
class BuildResult:
    emulator: Emulator
    simplified: SimplifiedInstance
    critical: CriticalPathSet
    skeleton: Skeleton
    hstar: Emulator
    parts: List[Emulator]
    timings: Dict[str, float] = field(default_factory=dict)


def build(inst: TerminalInstance, seed: int = 0, audit_every: int = 1, events: Optional[list] = None,
          engine: str = "auto", lp_cap: Optional[int] = None) -> BuildResult:
    """Run the whole construction and return the emulator with every intermediate."""
    timings: Dict[str, float] = {}

    def stage(name, fn, *args, **kw):
        t0 = time.perf_counter()
        out = fn(*args, **kw)
        timings[name] = time.perf_counter() - t0
        if events is not None:
            events.append({"event": "stage", "stage": name, "ms": round(1000 * timings[name], 3)})
        log.debug("stage %s took %.3fs", name, timings[name])
        return out

    si = stage("preprocess", simplify, inst, seed=seed)
    cps = stage("critical", compute_critical, si)
    sk = stage("skeleton", build_skeleton, si, cps, audit_every=audit_every, events=events)
    hstar = stage("weights", weigh_skeleton, sk, si.distances, engine=engine, cap=lp_cap)
    faces = [list(f.terminals) for f in si.faces]
    parts = stage("oneface", lambda: [oneface_emulator(ts, si.distances, engine=engine) for ts in faces])
    em = stage("glue", glue, hstar, faces, sk.boundary, parts)
    em.stats.update({
        "elim_iterations": sk.stats.get("iterations", 0),
        "initial_bad_pairs": sk.stats.get("initial_bad_pairs", 0),
        "hstar_vertices": len(sk.graph.vertices),
        "oneface_lp_rounds": sum(p.stats.get("lp_rounds", 0) for p in parts),
    })
    return BuildResult(em, si, cps, sk, hstar, parts, timings)
