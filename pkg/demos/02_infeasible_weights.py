"""When no edge weights exist, the solver says why.

Four terminals hang off a common centre.  Asking for distances 2, 2 across
one diagonal pairing and 3, 3 across the other is contradictory: both pairings
use every spoke exactly once.  The solver returns flows that expose this,
and the certificate checks out with exact arithmetic alone.
"""

import itertools
import json

from planar_emulator import PlanarGraph, Edge, solve, verify_certificate

# centre 4, terminals 0..3 around it; rotation lists the spokes counterclockwise
edges = [Edge(i, i, 4, 1) for i in range(4)]
rotation = {i: [i] for i in range(4)}
rotation[4] = [0, 3, 2, 1]
g = PlanarGraph(list(range(5)), edges, rotation, allow_zero=True)

canonical = {(a, b): [a, b] for a, b in itertools.combinations(range(4), 2)}
targets = {p: 2 for p in canonical}
targets[(0, 3)] = targets[(1, 2)] = 3

res = solve(g, canonical, targets, engine="exact")
print("feasible:", res.feasible)
cert = res.certificate
print("certificate:", json.dumps(cert.to_dict(), indent=1))
print("cost on canonical paths:", cert.cost(cert.canonical, targets))
print("cost on the other paths:", cert.cost(cert.paths, targets))
print("verifies:", verify_certificate(cert, g, targets, canonical))

targets[(0, 3)] = targets[(1, 2)] = 2
res = solve(g, canonical, targets, engine="exact")
print("\nwith consistent targets the weights are", {e: str(w) for e, w in res.weights.items()})
