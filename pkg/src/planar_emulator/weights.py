"""Edge weights for a skeleton by exact linear programming.

The program has one variable per skeleton edge that lies on a designated
(canonical) path.  Canonical paths must not be longer than their target;
every path between a terminal pair must not be shorter than its target.
The second family is exponential and is added lazily: solve, run Dijkstra,
add the violated paths, repeat.

Two engines share the loop.  The exact engine is a simplex method on an
integer tableau with fraction-free pivoting: every entry stays an integer
and the common denominator is the current basis determinant.  It maximizes
the total weight; a primal phase handles the upper bounds, which the zero
vector satisfies, and after that the tableau is dual feasible so every
lower-bound row is absorbed with dual pivots.

Large programs need thousands of path rows, which a dense exact tableau
cannot carry.  The guided engine runs the loop with a floating-point solver,
snaps the final vertex to nearby small-denominator rationals and then
certifies the result exactly: canonical sums, nonnegativity and an exact
Dijkstra run for every pair.  A path that fails the exact check becomes a
new row and the loop goes on; if no certificate is reached the exact engine
takes over.  Floats never decide correctness.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import IterationCap, LPInfeasible, PropertyViolation
from .graph_core import PlanarGraph, shortest_path_tree

log = logging.getLogger(__name__)

Pair = Tuple[int, int]


class Tableau:
    """``min sum_j c_j x_j`` subject to rows ``a.x <= b`` and ``x >= 0``.

    ``primal_solve`` needs a feasible tableau (all right-hand sides
    nonnegative); ``dual_solve`` needs nonnegative reduced costs.
    """

    def __init__(self, costs: Sequence[int]):
        self.n = len(costs)
        self.den = 1
        self.rows: List[List[int]] = []
        self.rhs: List[int] = []
        self.basis: List[int] = []
        self.obj: List[int] = list(costs)
        self.slack_of: List[int] = []
        self.value = 0
        self.pivots = 0
        self.bland_pivots = 0

    @property
    def ncols(self) -> int:
        return len(self.obj)

    def add_row(self, coeffs: Dict[int, int], rhs: int) -> int:
        """Append ``sum coeffs[j] x_j <= rhs``; returns the row index."""
        for row in self.rows:
            row.append(0)
        self.obj.append(0)
        s = self.ncols - 1
        den = self.den
        row = [0] * self.ncols
        for j, c in coeffs.items():
            row[j] = c * den
        row[s] = den
        b = rhs * den
        for i, bv in enumerate(self.basis):
            c = coeffs.get(bv, 0) if bv < self.n else 0
            if c:
                ri = self.rows[i]
                row = [x - c * y for x, y in zip(row, ri)]
                b -= c * self.rhs[i]
        self.rows.append(row)
        self.rhs.append(b)
        self.basis.append(s)
        self.slack_of.append(s)
        return len(self.rows) - 1

    def _pivot(self, r: int, c: int) -> None:
        p = self.rows[r][c]
        den = self.den
        prow, pb = self.rows[r], self.rhs[r]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[c]
            if f:
                self.rows[i] = [(x * p - f * y) // den for x, y in zip(row, prow)]
                self.rhs[i] = (self.rhs[i] * p - f * pb) // den
            else:
                self.rows[i] = [x * p // den for x in row]
                self.rhs[i] = self.rhs[i] * p // den
        f = self.obj[c]
        self.obj = [(x * p - f * y) // den for x, y in zip(self.obj, prow)]
        self.value = (self.value * p - f * pb) // den
        self.den = p
        self.basis[r] = c
        if p < 0:
            self.den = -p
            self.rows = [[-x for x in row] for row in self.rows]
            self.rhs = [-b for b in self.rhs]
            self.obj = [-x for x in self.obj]
            self.value = -self.value
        self.pivots += 1

    def primal_solve(self, max_pivots: int = 10 ** 6) -> None:
        """Primal pivots with Bland's rule from a feasible basis."""
        while True:
            enter = next((j for j, c in enumerate(self.obj) if c < 0), None)
            if enter is None:
                return
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a <= 0:
                    continue
                if best is None:
                    best = i
                    continue
                lhs, rhs = self.rhs[i] * self.rows[best][enter], self.rhs[best] * a
                if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                    best = i
            if best is None:
                raise PropertyViolation("linear program is unbounded")
            self._pivot(best, enter)
            if self.pivots > max_pivots:
                raise IterationCap(f"simplex exceeded {max_pivots} pivots")

    def dual_solve(self, max_pivots: int = 10 ** 6, stall: int = 50) -> Optional[int]:
        """Run dual pivots; returns ``None`` when optimal, else an infeasible row index.

        The leaving row is the most infeasible one.  After ``stall``
        consecutive degenerate pivots the rule falls back to Bland's
        (smallest basic index) until the objective moves again, which rules
        out cycling.
        """
        degenerate = 0
        last = Fraction(self.value, self.den)
        while True:
            cand = [i for i, b in enumerate(self.rhs) if b < 0]
            if not cand:
                return None
            if degenerate >= stall:
                r = min(cand, key=lambda i: self.basis[i])
                self.bland_pivots += 1
            else:
                r = min(cand, key=lambda i: (self.rhs[i], self.basis[i]))
            row = self.rows[r]
            best = None
            for j, a in enumerate(row):
                if a >= 0:
                    continue
                if best is None or self.obj[j] * (-row[best]) < self.obj[best] * (-a):
                    best = j
            if best is None:
                return r
            self._pivot(r, best)
            now = Fraction(self.value, self.den)
            degenerate = degenerate + 1 if now == last else 0
            last = now
            if self.pivots > max_pivots:
                raise IterationCap(f"simplex exceeded {max_pivots} pivots")

    def primal(self) -> List[Fraction]:
        x = [Fraction(0)] * self.n
        for i, bv in enumerate(self.basis):
            if bv < self.n:
                x[bv] = Fraction(self.rhs[i], self.den)
        return x

    def multipliers(self, r: int) -> List[Fraction]:
        """Row ``r`` of the basis inverse: the nonnegative combination of original rows."""
        return [Fraction(self.rows[r][s], self.den) for s in self.slack_of]


@dataclass
class FarkasCertificate:
    """Flows ``F`` on canonical paths and ``F'`` on other paths.

    ``F`` dominates ``F'`` on every edge while costing strictly less, which
    is impossible if all canonical paths could be shortest paths.
    """

    canonical: List[Tuple[Pair, List[int], Fraction]] = field(default_factory=list)
    paths: List[Tuple[Pair, List[int], Fraction]] = field(default_factory=list)

    @staticmethod
    def totals(flows) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for _, edges, v in flows:
            for e in edges:
                out[e] = out.get(e, Fraction(0)) + v
        return out

    def cost(self, flows, targets: Dict[Pair, Fraction]) -> Fraction:
        return sum((v * targets[_norm(p)] for p, _, v in flows), Fraction(0))

    def to_dict(self) -> Dict:
        def enc(flows):
            return [{"pair": list(p), "edges": list(e), "flow": str(v)} for p, e, v in flows]
        return {"canonical": enc(self.canonical), "paths": enc(self.paths)}

    @classmethod
    def from_dict(cls, d: Dict) -> "FarkasCertificate":
        def dec(items):
            return [(tuple(x["pair"]), list(x["edges"]), Fraction(x["flow"])) for x in items]
        return cls(dec(d.get("canonical", [])), dec(d.get("paths", [])))


def _norm(p: Pair) -> Pair:
    return (p[0], p[1]) if p[0] <= p[1] else (p[1], p[0])


def _is_path(g: PlanarGraph, pair: Pair, edges: Sequence[int]) -> bool:
    """Simple path joining the pair, listed from either end."""
    return _walks(g, pair[0], pair[1], edges) or _walks(g, pair[1], pair[0], edges)


def _walks(g: PlanarGraph, start, end, edges: Sequence[int]) -> bool:
    cur = start
    seen = {cur}
    for e in edges:
        if e not in g.edges:
            return False
        edge = g.edges[e]
        if cur not in (edge.u, edge.v):
            return False
        cur = edge.other(cur)
        if cur in seen:
            return False
        seen.add(cur)
    return cur == end and len(edges) > 0


def verify_certificate(cert: FarkasCertificate, skeleton: PlanarGraph,
                       targets: Dict[Pair, Fraction],
                       canonicals: Optional[Dict[Pair, List[int]]] = None) -> bool:
    """Check domination and the strict cost gap with exact arithmetic."""
    for pair, edges, v in cert.canonical + cert.paths:
        if v < 0 or _norm(pair) not in targets or not _is_path(skeleton, pair, edges):
            return False
    if canonicals is not None:
        for pair, edges, _ in cert.canonical:
            canon = canonicals.get(_norm(pair))
            if canon is None or sorted(canon) != sorted(edges):
                return False
    fe = cert.totals(cert.canonical)
    fpe = cert.totals(cert.paths)
    if any(fe.get(e, Fraction(0)) < v for e, v in fpe.items()):
        return False
    return cert.cost(cert.canonical, targets) < cert.cost(cert.paths, targets)


@dataclass
class WeightResult:
    feasible: bool
    weights: Dict[int, Fraction] = field(default_factory=dict)
    certificate: Optional[FarkasCertificate] = None
    rounds: int = 0
    generated: int = 0
    pivots: int = 0
    engine: str = "exact"


class _Program:
    """Shared bookkeeping: columns, fixed weights and exact separation."""

    def __init__(self, skeleton, canonicals, targets, equality_pairs, skip):
        self.g = skeleton
        self.targets = {_norm(p): Fraction(v) for p, v in targets.items()}
        self.canonicals = {_norm(p): list(e) for p, e in canonicals.items()}
        self.eq = sorted({_norm(p) for p in (equality_pairs if equality_pairs is not None
                                               else self.canonicals)})
        self.skip = set(skip or ())
        missing = set(self.eq) - set(self.canonicals)
        if missing:
            raise PropertyViolation(f"equality pairs without a canonical path: {sorted(missing)[:3]}")
        for p in self.eq:
            if p not in self.targets:
                raise PropertyViolation(f"no target for canonical pair {p}")
        self.var_edges = sorted({e for p in self.eq for e in self.canonicals[p]})
        self.col = {e: j for j, e in enumerate(self.var_edges)}
        big = max(self.targets.values(), default=Fraction(1))
        self.big = big if big > 0 else Fraction(1)
        self.terms = sorted({t for p in self.targets for t in p})

    def weights(self, x: Sequence) -> Dict:
        w = {e: self.big for e in self.g.edges if e not in self.skip}
        for e, j in self.col.items():
            w[e] = x[j]
        return w

    def violated(self, w: Dict, slack=0) -> List[Tuple[Pair, List[int]]]:
        """Shortest paths under ``w`` that undercut their target (by more than ``slack``)."""
        out = []
        for s in self.terms:
            key, pred = shortest_path_tree(self.g, s, w, self.skip)
            for t in self.terms:
                if t <= s or (s, t) not in self.targets or t not in key:
                    continue
                target = self.targets[(s, t)]
                if key[t][0] >= target - slack * max(1, target):
                    continue
                edges = []
                cur = t
                while cur != s:
                    e = pred[cur]
                    edges.append(e)
                    cur = self.g.other(e, cur)
                edges.reverse()
                if any(e not in self.col for e in edges):
                    raise PropertyViolation("a violated path uses an edge with fixed weight")
                out.append(((s, t), edges))
        return out

    def certify(self, w: Dict[int, Fraction]) -> bool:
        if any(v < 0 for v in w.values()):
            return False
        for p in self.eq:
            if sum(w[e] for e in self.canonicals[p]) != self.targets[p]:
                return False
        return not self.violated(w)


def solve(skeleton: PlanarGraph, canonicals: Dict[Pair, List[int]], targets: Dict[Pair, Fraction],
          equality_pairs: Optional[Iterable[Pair]] = None, skip: Optional[Set[int]] = None,
          cap: Optional[int] = None, engine: str = "auto") -> WeightResult:
    """Weights making every canonical path a shortest path of its target length.

    ``targets`` is keyed by terminal pairs; order inside a pair is ignored.
    Edges in ``skip`` are ignored.  Edges on no canonical path get a fixed
    weight no smaller than any target, so they can never help a path
    undercut a target.  Returns a ``WeightResult``; when infeasible it
    carries a certificate instead of weights.

    ``engine`` is ``"exact"``, ``"guided"`` or ``"auto"`` (guided above 60
    variables).  Whatever the engine, returned weights passed an exact check.
    """
    prog = _Program(skeleton, canonicals, targets, equality_pairs, skip)
    cap = cap if cap is not None else 10 * max(1, len(prog.targets)) * max(1, len(skeleton.edges))
    if engine == "auto":
        engine = "guided" if len(prog.var_edges) > 60 else "exact"
    if engine == "guided":
        res = _solve_guided(prog, cap)
        if res is not None:
            return res
        log.info("guided solve was not certified; switching to the exact engine")
    elif engine != "exact":
        raise ValueError(f"unknown engine {engine!r}")
    return _solve_exact(prog, cap)


def _solve_exact(prog: _Program, cap: int) -> WeightResult:
    scale = lcm(*(v.denominator for v in list(prog.targets.values()) + [prog.big]))
    lp = Tableau([-1] * len(prog.var_edges))
    rows: List[Tuple[str, Pair, List[int]]] = []

    def add(kind: str, pair: Pair, edges: List[int]) -> None:
        sign = 1 if kind == "upper" else -1
        coeffs: Dict[int, int] = {}
        for e in edges:
            coeffs[prog.col[e]] = coeffs.get(prog.col[e], 0) + sign
        lp.add_row(coeffs, sign * int(prog.targets[pair] * scale))
        rows.append((kind, pair, list(edges)))

    for p in prog.eq:
        add("upper", p, prog.canonicals[p])
    lp.primal_solve()
    for p in prog.eq:
        add("lower", p, prog.canonicals[p])
    rounds = generated = 0
    while True:
        rounds += 1
        bad_row = lp.dual_solve()
        if bad_row is not None:
            cert = FarkasCertificate()
            for (kind, pair, edges), v in zip(rows, lp.multipliers(bad_row)):
                if v:
                    (cert.canonical if kind == "upper" else cert.paths).append((pair, edges, v))
            return WeightResult(False, certificate=cert, rounds=rounds, generated=generated,
                                pivots=lp.pivots, engine="exact")
        w = prog.weights([v / scale for v in lp.primal()])
        cuts = prog.violated(w)
        if not cuts:
            return WeightResult(True, w, rounds=rounds, generated=generated, pivots=lp.pivots,
                                engine="exact")
        for pair, edges in cuts:
            if sum(w[e] for e in edges) >= prog.targets[pair]:
                raise PropertyViolation("separation returned a non-violated path")
            add("lower", pair, edges)
        generated += len(cuts)
        if generated > cap:
            raise IterationCap(f"constraint generation exceeded {cap} constraints")
        log.debug("round %d: %d violated paths", rounds, len(cuts))


def _snap(x: Sequence[float], limit: int) -> List[Fraction]:
    return [max(Fraction(0), Fraction(v).limit_denominator(limit)) for v in x]


def _solve_guided(prog: _Program, cap: int, max_rounds: int = 1000) -> Optional[WeightResult]:
    import numpy as np
    from scipy.optimize import linprog

    n = len(prog.var_edges)
    ftarget = {p: float(v) for p, v in prog.targets.items()}
    a_eq = np.zeros((len(prog.eq), n))
    b_eq = np.array([ftarget[p] for p in prog.eq])
    for i, p in enumerate(prog.eq):
        for e in prog.canonicals[p]:
            a_eq[i, prog.col[e]] += 1
    a_ub: List[np.ndarray] = []
    b_ub: List[float] = []
    seen: Set[Tuple[int, ...]] = set()

    def add(pair: Pair, edges: List[int]) -> bool:
        key = tuple(edges)
        if key in seen:
            return False
        seen.add(key)
        row = np.zeros(n)
        for e in edges:
            row[prog.col[e]] -= 1
        a_ub.append(row)
        b_ub.append(-ftarget[pair])
        return True

    rounds = 0
    while rounds < max_rounds and len(a_ub) <= cap:
        rounds += 1
        res = linprog(-np.ones(n), A_ub=np.array(a_ub) if a_ub else None, b_ub=b_ub or None,
                      A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs-ds")
        if res.status != 0:
            return None
        fw = prog.weights([max(0.0, float(v)) for v in res.x])
        fw = {e: float(v) for e, v in fw.items()}
        cuts = prog.violated(fw, slack=1e-9)
        if cuts:
            for pair, edges in cuts:
                add(pair, edges)
            continue
        for limit in (1, 2, 4, 12, 60, 840, 10 ** 6):
            w = prog.weights(_snap(res.x, limit))
            if prog.certify(w):
                return WeightResult(True, w, rounds=rounds, generated=len(a_ub), engine="guided")
        exact_cuts = prog.violated(prog.weights(_snap(res.x, 10 ** 6)))
        if not any(add(pair, edges) for pair, edges in exact_cuts):
            return None
    return None
