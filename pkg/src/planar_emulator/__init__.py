"""Exact distance emulators for planar graphs whose terminals lie on a few faces.

Typical use::

    from planar_emulator import two_ring, build, verify_emulator
    inst = two_ring()
    em = build(inst).emulator
    assert verify_emulator(inst, em).ok
"""

from .assemble import BuildResult, build, glue, weigh_skeleton
from .baseline import build_knz_minor, knz_bound
from .critical import CriticalPathSet, compute_critical
from .errors import EmulatorError, InputError, InternalError
from .generators import InstanceSpec, gen_instance, suite, two_ring
from .graph_core import (Edge, PlanarGraph, TerminalInstance, TerminalPath, all_terminal_distances,
                         enclosed_faces, shortest_path)
from .oneface import Emulator, build_quarter_grid, oneface_emulator
from .preprocess import SimplifiedInstance, simplify
from .skeleton import Skeleton, build_skeleton
from .verify import VerifyReport, verify_emulator
from .weights import FarkasCertificate, WeightResult, solve, verify_certificate
from .wyedelta import triangle_capacities, wye_delta_equiv_test

__version__ = "0.1.0"

__all__ = [
    "BuildResult", "CriticalPathSet", "Edge", "Emulator", "EmulatorError", "FarkasCertificate",
    "InputError", "InstanceSpec", "InternalError", "PlanarGraph", "SimplifiedInstance", "Skeleton",
    "TerminalInstance", "TerminalPath", "VerifyReport", "WeightResult", "all_terminal_distances",
    "build", "build_knz_minor", "build_quarter_grid", "build_skeleton", "compute_critical",
    "enclosed_faces", "gen_instance", "glue", "knz_bound", "oneface_emulator", "shortest_path",
    "simplify", "solve", "suite", "triangle_capacities", "two_ring", "verify_certificate",
    "verify_emulator", "weigh_skeleton", "wye_delta_equiv_test",
]
