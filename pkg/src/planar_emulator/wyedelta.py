"""Star/triangle flow equivalence checked by exact max-flow.

A star with centre ``x`` and leaves ``u, v, w`` carries capacities
``c_u, c_v, c_w`` on its spokes.  The matching triangle gets
``c(u, v) = (c_u + c_v - c_w) / 2`` and its cyclic variants.  A demand
vector on the three leaves (summing to zero) is routable in one network
exactly when it is routable in the other.
"""

from __future__ import annotations

import random
from collections import deque
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Sequence, Tuple

from .errors import NegativeTriangleCapacity

Node = Hashable
UEdge = Tuple[Node, Node, Fraction]
LEAVES = ("u", "v", "w")


def triangle_capacities(cu, cv, cw) -> Dict[Tuple[str, str], Fraction]:
    cu, cv, cw = Fraction(cu), Fraction(cv), Fraction(cw)
    caps = {("u", "v"): (cu + cv - cw) / 2, ("v", "w"): (cv + cw - cu) / 2, ("u", "w"): (cu + cw - cv) / 2}
    for pair, c in caps.items():
        if c < 0:
            raise NegativeTriangleCapacity(f"triangle edge {pair} would get capacity {c}")
    return caps


def star_edges(cu, cv, cw) -> List[UEdge]:
    return [("x", "u", Fraction(cu)), ("x", "v", Fraction(cv)), ("x", "w", Fraction(cw))]


def triangle_edges(cu, cv, cw) -> List[UEdge]:
    return [(a, b, c) for (a, b), c in triangle_capacities(cu, cv, cw).items()]


def max_flow(edges: Iterable[UEdge], s: Node, t: Node) -> Fraction:
    """Edmonds-Karp on an undirected capacitated graph, exact arithmetic."""
    cap: Dict[Node, Dict[Node, Fraction]] = {}
    for a, b, c in edges:
        cap.setdefault(a, {}).setdefault(b, Fraction(0))
        cap.setdefault(b, {}).setdefault(a, Fraction(0))
        cap[a][b] += c
        cap[b][a] += c
    if s not in cap or t not in cap:
        return Fraction(0)
    total = Fraction(0)
    while True:
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            x = queue.popleft()
            for y, c in cap[x].items():
                if c > 0 and y not in parent:
                    parent[y] = x
                    queue.append(y)
        if t not in parent:
            return total
        path = []
        y = t
        while parent[y] is not None:
            path.append((parent[y], y))
            y = parent[y]
        push = min(cap[a][b] for a, b in path)
        for a, b in path:
            cap[a][b] -= push
            cap[b][a] += push
        total += push


def routable(edges: Sequence[UEdge], demand: Dict[Node, Fraction]) -> bool:
    """Can the supplies (positive entries) be shipped to the sinks (negative)?"""
    if sum(demand.values()) != 0:
        raise ValueError("demands must sum to zero")
    aux = list(edges)
    need = Fraction(0)
    for v, d in demand.items():
        if d > 0:
            aux.append(("_src", v, d))
            need += d
        elif d < 0:
            aux.append((v, "_snk", -d))
    if need == 0:
        return True
    # arcs to the super nodes must be one-way; undirected is fine because
    # nothing ever wants to flow back into the source or out of the sink
    return max_flow(aux, "_src", "_snk") == need


def sample_demand(rng: random.Random, scale: Fraction, steps: int = 8) -> Dict[str, Fraction]:
    """Zero-sum demand with entries on the lattice ``scale * j / steps``."""
    a = Fraction(rng.randint(-steps, steps), steps) * scale
    b = Fraction(rng.randint(-steps, steps), steps) * scale
    return {"u": a, "v": b, "w": -a - b}


def wye_delta_equiv_test(caps: Sequence, seed: int = 0, samples: int = 100) -> bool:
    """True iff star and triangle agree on routability for every sampled demand."""
    cu, cv, cw = (Fraction(c) for c in caps)
    tri = triangle_edges(cu, cv, cw)
    star = star_edges(cu, cv, cw)
    rng = random.Random(seed)
    scale = max(cu, cv, cw)
    for _ in range(samples):
        d = sample_demand(rng, scale)
        if routable(star, d) != routable(tri, d):
            return False
    return True


def random_capacities(rng: random.Random, denom: int = 6, top: int = 30) -> Tuple[Fraction, Fraction, Fraction]:
    """Positive rationals satisfying the triangle inequality, so the derived triangle is valid."""
    while True:
        c = [Fraction(rng.randint(1, top), rng.randint(1, denom)) for _ in range(3)]
        if all(2 * x <= sum(c) for x in c):
            return c[0], c[1], c[2]
