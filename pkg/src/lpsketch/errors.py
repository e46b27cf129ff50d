"""Exception hierarchy for lpsketch."""


class LpSketchError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(LpSketchError, ValueError):
    pass


class ZeroRhs(LpSketchError, ValueError):
    pass


class ZeroColumn(LpSketchError, ValueError):
    def __init__(self, column):
        super().__init__(f"column {column} of A is identically zero")
        self.column = column


class NumericalFailure(LpSketchError, RuntimeError):
    """The simplex method hit its iteration cap or lost numerical stability."""


class TooLarge(LpSketchError, ValueError):
    pass


class BadEpsilon(LpSketchError, ValueError):
    pass


class BadSparsity(LpSketchError, ValueError):
    pass


class NotInCone(LpSketchError, ValueError):
    pass


class InfeasibleProjection(LpSketchError, RuntimeError):
    """The projected LP is infeasible, so no solution can be retrieved."""


class UnboundedProjection(LpSketchError, RuntimeError):
    pass


class DegenerateInstance(LpSketchError, RuntimeError):
    pass


class NonAscii(LpSketchError, ValueError):
    pass


class BadLength(LpSketchError, ValueError):
    pass


class RankFailure(LpSketchError, RuntimeError):
    pass


class SolveFailure(LpSketchError, RuntimeError):
    pass
