"""JSON round trips for graphs, instances, emulators and stage artifacts.

Graphs use ``{"vertices", "edges": [{"id", "u", "v", "w"}], "rotation",
"outer_face_walk"}`` with weights as integer or ``"p/q"`` strings.  An
instance adds ``"faces": [{"face_walk", "terminals"}]`` with terminals in
clockwise order.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from .critical import CriticalPathSet, Segment
from .errors import InputError
from .graph_core import (Edge, PlanarGraph, TerminalFace, TerminalInstance, TerminalPath,
                         format_weight, instance_from_walks, parse_weight)
from .oneface import Emulator
from .preprocess import FaceCycle, SimplifiedInstance
from .skeleton import Skeleton


def _pairs_out(d: Dict[Tuple[int, int], Any], enc=lambda v: v) -> List[list]:
    return [[a, b, enc(v)] for (a, b), v in sorted(d.items())]


def _pairs_in(items, dec=lambda v: v) -> Dict[Tuple[int, int], Any]:
    return {(int(a), int(b)): dec(v) for a, b, v in items}


def graph_to_dict(g: PlanarGraph) -> Dict:
    walk = g.face_edges(g.outer_face()) if g.outer_dart is not None else []
    return {
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "u": e.u, "v": e.v, "w": format_weight(e.w)}
                  for e in sorted(g.edges.values(), key=lambda e: e.id)],
        "rotation": {str(v): list(r) for v, r in g.rotation.items()},
        "outer_face_walk": walk,
        "allow_zero": g.allow_zero,
    }


def graph_from_dict(d: Dict, allow_zero: Optional[bool] = None) -> PlanarGraph:
    try:
        zero = bool(d.get("allow_zero", False)) if allow_zero is None else allow_zero
        edges = [Edge(int(e["id"]), int(e["u"]), int(e["v"]), parse_weight(e["w"], allow_zero=zero))
                 for e in d["edges"]]
        rotation = {int(v): [int(x) for x in r] for v, r in d["rotation"].items()}
        vertices = [int(v) for v in d.get("vertices", rotation)]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed graph: {exc}") from exc
    g = PlanarGraph(vertices, edges, rotation, allow_zero=zero)
    walk = d.get("outer_face_walk") or []
    if walk:
        fid = g.find_face([int(e) for e in walk])
        g.outer_dart = g.faces()[fid][0]
    return g


def instance_to_dict(inst: TerminalInstance) -> Dict:
    d = graph_to_dict(inst.graph)
    faces = []
    for face in inst.faces:
        t = face.terminals[0]
        fid = inst.graph.face_of_dart(t, face.corners[t])
        faces.append({"face_walk": inst.graph.face_edges(fid), "terminals": list(face.terminals)})
    d["faces"] = faces
    if inst.meta:
        d["meta"] = inst.meta
    return d


def instance_from_dict(d: Dict) -> TerminalInstance:
    g = graph_from_dict(d, allow_zero=False)
    if g.outer_dart is None:
        raise InputError("an instance needs an outer_face_walk")
    try:
        specs = [([int(e) for e in f["face_walk"]], [int(t) for t in f["terminals"]]) for f in d["faces"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed faces: {exc}") from exc
    inst = instance_from_walks(g, specs)
    inst.meta = dict(d.get("meta", {}))
    return inst


def emulator_to_dict(em: Emulator) -> Dict:
    d = graph_to_dict(em.graph)
    d["terminal_map"] = {str(k): v for k, v in em.terminal_map.items()}
    d["provenance"] = {str(k): v for k, v in em.provenance.items()}
    d["stats"] = em.stats
    return d


def emulator_from_dict(d: Dict) -> Emulator:
    g = graph_from_dict(d, allow_zero=True)
    try:
        tmap = {int(k): int(v) for k, v in d["terminal_map"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed terminal map: {exc}") from exc
    prov = {int(k): v for k, v in d.get("provenance", {}).items()}
    return Emulator(g, tmap, prov, dict(d.get("stats", {})))


def distances_to_dict(faces: List[List[int]], dist: Dict[Tuple[int, int], Fraction]) -> Dict:
    return {"faces": faces, "distances": _pairs_out(dist, format_weight)}


def distances_from_dict(d: Dict) -> Tuple[List[List[int]], Dict[Tuple[int, int], Fraction]]:
    try:
        faces = [[int(t) for t in f] for f in d["faces"]]
        dist = _pairs_in(d["distances"], lambda v: parse_weight(v, allow_zero=True))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed distance table: {exc}") from exc
    return faces, dist


def _path_out(p: TerminalPath) -> Dict:
    return {"endpoints": list(p.endpoints), "vertices": p.vertices, "edges": p.edges,
            "length": format_weight(p.length)}


def _path_in(d: Dict) -> TerminalPath:
    return TerminalPath(tuple(d["endpoints"]), list(d["vertices"]), list(d["edges"]),
                        parse_weight(d["length"], allow_zero=True))


def simplified_to_dict(si: SimplifiedInstance) -> Dict:
    return {
        "graph": graph_to_dict(si.graph),
        "faces": [{"terminals": f.terminals, "boundary": f.boundary, "is_outer": f.is_outer}
                  for f in si.faces],
        "strands": {str(k): _path_out(p) for k, p in si.strands.items()},
        "pair_strand": _pairs_out(si.pair_strand),
        "crossings": _pairs_out(si.crossings),
        "provenance": {str(k): v for k, v in si.provenance.items()},
        "distances": _pairs_out(si.distances, format_weight),
        "stats": si.stats,
    }


def simplified_from_dict(d: Dict) -> SimplifiedInstance:
    try:
        return SimplifiedInstance(
            graph_from_dict(d["graph"], allow_zero=True),
            [FaceCycle(list(f["terminals"]), list(f["boundary"]), bool(f["is_outer"])) for f in d["faces"]],
            {int(k): _path_in(p) for k, p in d["strands"].items()},
            _pairs_in(d["pair_strand"], int),
            _pairs_in(d["crossings"], int),
            {int(k): v for k, v in d.get("provenance", {}).items()},
            _pairs_in(d["distances"], lambda v: parse_weight(v, allow_zero=True)),
            dict(d.get("stats", {})),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed simplified instance: {exc}") from exc


def critical_to_dict(cps: CriticalPathSet) -> Dict:
    return {
        "segments": [{"terminal": t, "face": r,
                      "segments": [[s.start, s.end, s.primary, s.secondary] for s in segs]}
                     for (t, r), segs in sorted(cps.segments.items())],
        "equivalence": [{"terminal": t, "face": r, "equivalent": eq}
                        for (t, r), eq in sorted(cps.equivalence.items())],
    }


def critical_from_dict(d: Dict) -> CriticalPathSet:
    cps = CriticalPathSet()
    try:
        for item in d["segments"]:
            t, r = int(item["terminal"]), int(item["face"])
            cps.segments[(t, r)] = [Segment(r, *map(int, s)) for s in item["segments"]]
        for item in d.get("equivalence", []):
            cps.equivalence[(int(item["terminal"]), int(item["face"]))] = [bool(x) for x in item["equivalent"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed critical path set: {exc}") from exc
    return cps


def skeleton_to_dict(sk: Skeleton) -> Dict:
    return {
        "graph": graph_to_dict(sk.graph),
        "terminals": sk.terminals,
        "faces": sk.faces,
        "boundary": sk.boundary,
        "canonical": [[a, b, edges] for (a, b), edges in sorted(sk.canonical.items())],
        "crossing_vertex": _pairs_out(sk.crossing_vertex),
        "stats": sk.stats,
    }


def skeleton_from_dict(d: Dict) -> Skeleton:
    try:
        return Skeleton(
            graph_from_dict(d["graph"], allow_zero=True),
            [int(t) for t in d["terminals"]],
            [[int(t) for t in f] for f in d["faces"]],
            [[int(e) for e in b] for b in d["boundary"]],
            {(int(a), int(b)): [int(e) for e in edges] for a, b, edges in d["canonical"]},
            _pairs_in(d.get("crossing_vertex", []), int),
            dict(d.get("stats", {})),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed skeleton: {exc}") from exc


def load_json(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def dump_json(obj: Any, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1, default=str)
        fh.write("\n")
