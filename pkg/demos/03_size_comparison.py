"""Emulator size against input size and the path-union baseline.

Runs a handful of seeded instances and prints one row each.  The emulator
size is governed by the terminal and face counts alone, never by the grid.
At these small sizes the path-union minor is usually smaller still: its
worst case grows like k^4 against f^2 k^2, and that gap needs far more
terminals to show.
"""

from planar_emulator import InstanceSpec, build, build_knz_minor, gen_instance, verify_emulator

print(f"{'kind':>13} {'f':>2} {'k':>3} {'|V(G)|':>7} {'|V(H)|':>7} {'|V(KNZ)|':>9} exact")
for i, (kind, w, f, k) in enumerate([("grid-ring", 8, 1, 8), ("grid-ring", 14, 2, 8),
                                      ("random-planar", 14, 2, 10), ("grid-ring", 16, 3, 9),
                                      ("random-planar", 18, 3, 12)]):
    inst = gen_instance(InstanceSpec(kind=kind, width=w, height=w, f=f, k=k, seed=50 + i))
    em = build(inst).emulator
    knz = build_knz_minor(inst)
    ok = verify_emulator(inst, em).ok
    print(f"{kind:>13} {f:>2} {k:>3} {len(inst.graph.vertices):>7} {len(em.graph.vertices):>7} "
          f"{len(knz.graph.vertices):>9} {ok}")
