"""Size and exactness benchmark over seeded instances."""

from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterable, List, Optional

from .assemble import build
from .baseline import build_knz_minor
from .generators import InstanceSpec, gen_instance, suite
from .verify import verify_emulator

COLUMNS = ["seed", "f", "k", "|V(G)|", "|V(H)|", "|V(KNZ)|", "exact?", "lp_iters", "elim_iters", "wall_ms",
           "size_constant"]


def specs_from_config(cfg: Dict) -> List[InstanceSpec]:
    """``{"instances": [spec, ...]}`` or ``{"suite": {"n": .., "seed": .., "max_k": ..}}``."""
    if "instances" in cfg:
        return [InstanceSpec.from_dict(d) for d in cfg["instances"]]
    opts = cfg.get("suite", {})
    return suite(n=int(opts.get("n", 50)), seed=int(opts.get("seed", 0)), max_k=int(opts.get("max_k", 12)))


def bench_one(spec: InstanceSpec) -> Dict:
    inst = gen_instance(spec)
    t0 = time.perf_counter()
    res = build(inst, seed=spec.seed)
    wall = (time.perf_counter() - t0) * 1000
    em = res.emulator
    report = verify_emulator(inst, em)
    knz = build_knz_minor(inst)
    f, k = inst.f, inst.k
    vh = len(em.graph.vertices)
    return {
        "seed": spec.seed,
        "f": f,
        "k": k,
        "|V(G)|": len(inst.graph.vertices),
        "|V(H)|": vh,
        "|V(KNZ)|": len(knz.graph.vertices),
        "exact?": report.ok,
        "lp_iters": em.stats.get("lp_rounds", 0) + em.stats.get("oneface_lp_rounds", 0),
        "elim_iters": em.stats.get("elim_iterations", 0),
        "wall_ms": round(wall, 1),
        "size_constant": round(vh / (f * f * k * k), 4),
    }


def run_bench(specs: Iterable[InstanceSpec], out: Optional[str] = None, workers: int = 1) -> List[Dict]:
    specs = list(specs)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            rows = list(pool.map(bench_one, specs))
    else:
        rows = [bench_one(s) for s in specs]
    if out:
        with open(out, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=COLUMNS)
            w.writeheader()
            w.writerows(rows)
    return rows
