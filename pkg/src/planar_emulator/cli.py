"""``emulator`` command line.

Exit codes: 0 success, 1 a verification (or feasibility) check came out
negative, 2 bad input, 3 an internal assertion fired.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from typing import List, Optional

from . import serialize as ser
from .assemble import build, glue, weigh_skeleton
from .bench import run_bench, specs_from_config
from .critical import compute_critical
from .errors import EmulatorError, InputError, InternalError, LPInfeasible
from .generators import InstanceSpec, gen_instance
from .graph_core import all_terminal_distances
from .oneface import oneface_emulator
from .preprocess import simplify
from .skeleton import build_skeleton
from .verify import verify_emulator
from .weights import solve

log = logging.getLogger("planar_emulator")


class EventStream(list):
    """List of pipeline events that also prints each one as a JSON line."""

    def __init__(self, stream):
        super().__init__()
        self.stream = stream

    def append(self, item):
        super().append(item)
        rec = {"ts": round(time.time(), 3)}
        rec.update(item)
        self.stream.write(json.dumps(rec, default=str) + "\n")
        self.stream.flush()


class _JsonFormatter(logging.Formatter):
    def format(self, record):
        return json.dumps({"ts": round(record.created, 3), "level": record.levelname.lower(),
                           "logger": record.name, "message": record.getMessage()})


def _targets_from(path: str):
    d = ser.load_json(path)
    return ser.distances_from_dict(d)


def _write_distances(inst, path: str) -> None:
    dist = all_terminal_distances(inst)
    ser.dump_json(ser.distances_to_dict([list(f.terminals) for f in inst.faces], dist), path)


def cmd_gen(a, events) -> int:
    if a.spec:
        spec = InstanceSpec.from_dict(ser.load_json(a.spec))
    else:
        spec = InstanceSpec(kind=a.kind, width=a.width, height=a.height, f=a.faces, k=a.k, seed=a.seed)
    inst = gen_instance(spec)
    ser.dump_json(ser.instance_to_dict(inst), a.out)
    if a.distances:
        _write_distances(inst, a.distances)
    return 0


def cmd_preprocess(a, events) -> int:
    inst = ser.instance_from_dict(ser.load_json(a.inp))
    si = simplify(inst, seed=a.seed)
    ser.dump_json(ser.simplified_to_dict(si), a.out)
    if a.distances:
        _write_distances(inst, a.distances)
    return 0


def cmd_critical(a, events) -> int:
    d = ser.load_json(a.inp)
    si = ser.simplified_from_dict(d)
    cps = compute_critical(si)
    ser.dump_json({"simplified": d, "critical": ser.critical_to_dict(cps)}, a.out)
    return 0


def cmd_skeleton(a, events) -> int:
    d = ser.load_json(a.inp)
    if "simplified" not in d or "critical" not in d:
        raise InputError("expected the output of the critical stage")
    si = ser.simplified_from_dict(d["simplified"])
    cps = ser.critical_from_dict(d["critical"])
    sk = build_skeleton(si, cps, audit_every=a.audit_every, events=events)
    out = ser.skeleton_to_dict(sk)
    out["targets"] = ser.distances_to_dict([list(f.terminals) for f in si.faces], si.distances)
    ser.dump_json(out, a.out)
    return 0


def cmd_weights(a, events) -> int:
    d = ser.load_json(a.skeleton)
    sk = ser.skeleton_from_dict(d)
    if a.targets:
        _, dist = _targets_from(a.targets)
    elif "targets" in d:
        _, dist = ser.distances_from_dict(d["targets"])
    else:
        raise InputError("no targets given")
    try:
        hstar = weigh_skeleton(sk, dist, engine=a.engine, cap=a.lp_cap)
    except LPInfeasible as exc:
        if a.emit_certificate and exc.certificate is not None:
            ser.dump_json(exc.certificate.to_dict(), a.emit_certificate)
        sys.stderr.write(json.dumps(exc.to_dict()) + "\n")
        return 1
    out = ser.emulator_to_dict(hstar)
    out["faces"] = sk.faces
    out["boundary"] = sk.boundary
    ser.dump_json(out, a.out)
    return 0


def cmd_oneface(a, events) -> int:
    faces, dist = _targets_from(a.targets)
    if a.terminals:
        terms = [int(x) for x in a.terminals.split(",")]
    else:
        if not 0 <= a.face < len(faces):
            raise InputError(f"face index {a.face} out of range")
        terms = faces[a.face]
    try:
        em = oneface_emulator(terms, dist, engine=a.engine)
    except KeyError as exc:
        raise InputError(str(exc)) from exc
    except LPInfeasible as exc:
        sys.stderr.write(json.dumps(exc.to_dict()) + "\n")
        return 1
    ser.dump_json(ser.emulator_to_dict(em), a.out)
    return 0


def cmd_glue(a, events) -> int:
    d = ser.load_json(a.hstar)
    hstar = ser.emulator_from_dict(d)
    try:
        faces = [[int(t) for t in f] for f in d["faces"]]
        boundary = [[int(e) for e in b] for b in d["boundary"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"weighted skeleton lacks face data: {exc}") from exc
    parts = [ser.emulator_from_dict(ser.load_json(p)) for p in a.parts]
    em = glue(hstar, faces, boundary, parts)
    ser.dump_json(ser.emulator_to_dict(em), a.out)
    return 0


def cmd_build(a, events) -> int:
    inst = ser.instance_from_dict(ser.load_json(a.inp))
    res = build(inst, seed=a.seed, audit_every=a.audit_every, events=events, engine=a.engine, lp_cap=a.lp_cap)
    em = res.emulator
    em.stats["timings_ms"] = {k: round(1000 * v, 2) for k, v in res.timings.items()}
    ser.dump_json(ser.emulator_to_dict(em), a.out)
    if a.verify:
        report = verify_emulator(inst, em)
        if not report.ok:
            sys.stderr.write(json.dumps({"error": "verification_failed", "mismatches": len(report.mismatches)}) + "\n")
            return 1
    return 0


def cmd_verify(a, events) -> int:
    inst = ser.instance_from_dict(ser.load_json(a.inp))
    em = ser.emulator_from_dict(ser.load_json(a.emulator))
    report = verify_emulator(inst, em)
    if a.report:
        ser.dump_json(report.to_dict(), a.report)
    summary = {"ok": report.ok, "pairs": len(report.rows), "mismatches": len(report.mismatches),
               "planar": report.planar, "vertices_g": report.vertices_g, "vertices_h": report.vertices_h}
    print(json.dumps(summary))
    return 0 if report.ok else 1


def cmd_bench(a, events) -> int:
    cfg = ser.load_json(a.spec) if a.spec else {}
    try:
        specs = specs_from_config(cfg)
    except TypeError as exc:
        raise InputError(f"bad bench spec: {exc}") from exc
    rows = run_bench(specs, a.out, workers=a.workers)
    bad = [r for r in rows if not r["exact?"]]
    print(json.dumps({"instances": len(rows), "exact": len(rows) - len(bad)}))
    return 1 if bad else 0


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="emulator", description="Exact distance emulators for planar graphs "
                                "with terminals on few faces.")
    p.add_argument("--json-logs", action="store_true", help="one JSON object per log record and pipeline event")
    p.add_argument("--log-level", default="warning")
    sub = p.add_subparsers(dest="cmd", required=True)

    def io(sp, need_in=True):
        if need_in:
            sp.add_argument("--in", dest="inp", required=True)
        sp.add_argument("--out", required=True)

    def engine(sp):
        sp.add_argument("--engine", choices=["auto", "exact", "guided"], default="auto")
        sp.add_argument("--lp-cap", type=int, default=None, help="constraint generation round cap")

    def positive(x):
        v = int(x)
        if v <= 0:
            raise argparse.ArgumentTypeError("must be positive")
        return v

    sp = sub.add_parser("build", help="full pipeline")
    io(sp)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--audit-every", type=positive, default=1)
    sp.add_argument("--verify", action="store_true", help="check the result before exiting")
    engine(sp)
    sp.set_defaults(fn=cmd_build)

    sp = sub.add_parser("preprocess")
    io(sp)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--distances", help="also write the terminal distance table here")
    sp.set_defaults(fn=cmd_preprocess)

    sp = sub.add_parser("critical")
    io(sp)
    sp.set_defaults(fn=cmd_critical)

    sp = sub.add_parser("skeleton")
    io(sp)
    sp.add_argument("--audit-every", type=positive, default=1)
    sp.set_defaults(fn=cmd_skeleton)

    sp = sub.add_parser("weights")
    sp.add_argument("--skeleton", required=True)
    sp.add_argument("--targets")
    sp.add_argument("--out", required=True)
    sp.add_argument("--emit-certificate")
    engine(sp)
    sp.set_defaults(fn=cmd_weights)

    sp = sub.add_parser("oneface")
    sp.add_argument("--targets", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--face", type=int, default=0)
    sp.add_argument("--terminals", help="comma separated clockwise terminal list")
    sp.add_argument("--engine", choices=["auto", "exact", "guided"], default="auto")
    sp.set_defaults(fn=cmd_oneface)

    sp = sub.add_parser("glue")
    sp.add_argument("--hstar", required=True)
    sp.add_argument("--parts", nargs="+", required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(fn=cmd_glue)

    sp = sub.add_parser("verify")
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--emulator", required=True)
    sp.add_argument("--report")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("bench")
    sp.add_argument("--spec")
    sp.add_argument("--out", required=True)
    sp.add_argument("--workers", type=positive, default=1)
    sp.set_defaults(fn=cmd_bench)

    sp = sub.add_parser("gen")
    sp.add_argument("--spec")
    sp.add_argument("--kind", default="grid-ring")
    sp.add_argument("--width", type=int, default=8)
    sp.add_argument("--height", type=int, default=8)
    sp.add_argument("--faces", type=int, default=2)
    sp.add_argument("--k", type=int, default=8)
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--out", required=True)
    sp.add_argument("--distances")
    sp.set_defaults(fn=cmd_gen)
    return p


def run(argv: Optional[List[str]] = None) -> int:
    parser = _parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = logging.StreamHandler(sys.stderr)
    if a.json_logs:
        handler.setFormatter(_JsonFormatter())
    root = logging.getLogger("planar_emulator")
    root.handlers[:] = [handler]
    root.setLevel(a.log_level.upper())
    events = EventStream(sys.stderr) if a.json_logs else None
    try:
        return a.fn(a, events)
    except InputError as exc:
        sys.stderr.write(json.dumps(exc.to_dict()) + "\n")
        return 2
    except InternalError as exc:
        sys.stderr.write(json.dumps(exc.to_dict()) + "\n")
        return 3
    except EmulatorError as exc:
        sys.stderr.write(json.dumps(exc.to_dict()) + "\n")
        return 3
    except Exception as exc:  # noqa: BLE001 - anything else is our bug
        log.debug("unexpected failure", exc_info=True)
        sys.stderr.write(json.dumps({"error": "internal_error", "message": f"{type(exc).__name__}: {exc}"}) + "\n")
        return 3


def main() -> None:
    sys.exit(run())
