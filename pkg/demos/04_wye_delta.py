"""A star and its matching triangle route the same demands.

Spokes with capacities c_u, c_v, c_w become triangle edges with capacity
(c_u + c_v - c_w) / 2 and its rotations.  Each demand is checked with an
exact max-flow in both networks.
"""

import random
from fractions import Fraction

from planar_emulator.wyedelta import routable, sample_demand, star_edges, triangle_capacities, triangle_edges

caps = (Fraction(3), Fraction(2), Fraction(2))
print("star spokes:", [str(c) for c in caps])
print("triangle:", {k: str(v) for k, v in triangle_capacities(*caps).items()})

rng = random.Random(0)
agree = 0
for _ in range(10):
    d = sample_demand(rng, max(caps))
    s, t = routable(star_edges(*caps), d), routable(triangle_edges(*caps), d)
    agree += s == t
    print(f"  demand {{{', '.join(f'{k}: {v}' for k, v in d.items())}}}: star {s}, triangle {t}")
print(f"{agree}/10 agree")
