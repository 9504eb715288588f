"""Exception hierarchy shared by every module."""


class SteinsymError(Exception):
    """Base class for all library errors."""


class InputError(SteinsymError, ValueError):
    """Malformed or invalid user input (CLI exit code 2)."""


class SelfIntersectingPolygon(InputError):
    pass


class DegeneratePrimitive(InputError):
    pass


class DisconnectedUnion(InputError):
    pass


class OriginInSet(InputError):
    pass


class InvalidSlitExtent(InputError):
    pass


class TooManyVertices(InputError):
    pass


class NotMappable(InputError):
    """No exterior-map constructor covers this set."""


class NonSymmetricSet(InputError):
    pass


class SolverDivergence(SteinsymError):
    def __init__(self, message, residual=float("nan")):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class CheckError(SteinsymError):
    """Hypothesis of an inequality check is not met."""


class ContainmentViolated(CheckError):
    pass


class ZeroMeasureSlice(CheckError):
    pass


class SliceHypothesisViolated(CheckError):
    pass
