"""Exception hierarchy.

Errors split in two families so the command line can map them onto exit
codes: ``InputError`` means the caller handed us something invalid, while
``InternalError`` means one of our own runtime assertions fired.
"""


class EmulatorError(Exception):
    code = "error"

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


class InputError(EmulatorError):
    code = "input_error"


class InternalError(EmulatorError):
    code = "internal_error"


class InconsistentRotation(InputError):
    code = "inconsistent_rotation"


class NotClosed(InputError):
    code = "not_closed"


class Unreachable(InputError):
    code = "unreachable"


class SpecInfeasible(InputError):
    code = "spec_infeasible"


class NegativeTriangleCapacity(InputError):
    code = "negative_triangle_capacity"


class OrderMismatch(InputError):
    code = "order_mismatch"


class DegenerateFace(InternalError):
    code = "degenerate_face"


class NonTermination(InternalError):
    code = "non_termination"


class NoBend(InternalError):
    code = "no_bend"


class ConvergenceCapExceeded(InternalError):
    code = "convergence_cap_exceeded"


class NonPlanarRotation(InternalError):
    code = "non_planar_rotation"


class IterationCap(InternalError):
    code = "iteration_cap"


class PropertyViolation(InternalError):
    """A structural invariant of the construction failed an audit."""

    code = "property_violation"


class LPInfeasible(InternalError):
    """The weight LP has no solution; ``certificate`` explains why."""

    code = "lp_infeasible"

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate
