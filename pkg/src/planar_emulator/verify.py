"""Independent check of an emulator against its input graph.

Only plain Dijkstra from ``graph_core`` is used here; nothing from the
construction pipeline is trusted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .graph_core import TerminalInstance, format_weight, shortest_path_tree
from .oneface import Emulator


@dataclass
class PairRow:
    s: int
    t: int
    dist_g: Fraction
    dist_h: Optional[Fraction]

    @property
    def equal(self) -> bool:
        return self.dist_h is not None and self.dist_g == self.dist_h


@dataclass
class VerifyReport:
    rows: List[PairRow]
    planar: bool
    injective: bool
    nonnegative: bool
    vertices_g: int
    vertices_h: int
    problems: List[str] = field(default_factory=list)

    @property
    def mismatches(self) -> List[PairRow]:
        return [r for r in self.rows if not r.equal]

    @property
    def ok(self) -> bool:
        return self.planar and self.injective and self.nonnegative and not self.mismatches and not self.problems

    def to_dict(self) -> Dict:
        return {
            "ok": self.ok,
            "planar": self.planar,
            "injective": self.injective,
            "nonnegative": self.nonnegative,
            "vertices_g": self.vertices_g,
            "vertices_h": self.vertices_h,
            "mismatches": len(self.mismatches),
            "problems": self.problems,
            "pairs": [{"s": r.s, "t": r.t, "dist_g": format_weight(r.dist_g),
                       "dist_h": None if r.dist_h is None else format_weight(r.dist_h), "equal": r.equal}
                      for r in self.rows],
        }


def _distances(g, sources) -> Dict[int, Dict[int, Fraction]]:
    out = {}
    for s in sources:
        key, _ = shortest_path_tree(g, s)
        out[s] = {v: k[0] for v, k in key.items()}
    return out


def verify_emulator(inst: TerminalInstance, em: Emulator) -> VerifyReport:
    terms = inst.terminals
    problems = []
    missing = [t for t in terms if t not in em.terminal_map]
    if missing:
        problems.append(f"terminals without an image: {missing}")
    images = [em.terminal_map[t] for t in terms if t in em.terminal_map]
    injective = len(set(images)) == len(images)
    bad = [v for v in images if v not in em.graph.rotation]
    if bad:
        problems.append(f"terminal images missing from the emulator: {bad}")
    nonneg = all(e.w >= 0 for e in em.graph.edges.values())
    dg = _distances(inst.graph, terms)
    dh = _distances(em.graph, [em.terminal_map[t] for t in terms if t in em.terminal_map and em.terminal_map[t] in em.graph.rotation])
    rows = []
    for i, s in enumerate(terms):
        for t in terms[i + 1:]:
            hs, ht = em.terminal_map.get(s), em.terminal_map.get(t)
            d_h = dh.get(hs, {}).get(ht) if hs is not None and ht is not None else None
            rows.append(PairRow(s, t, dg[s][t], d_h))
    return VerifyReport(rows, em.graph.euler_ok(), injective, nonneg,
                        len(inst.graph.vertices), len(em.graph.vertices), problems)
