"""Exception types shared across the package."""


class PentagramError(Exception):
    pass


class DegenerateInput(PentagramError, ValueError):
    """Coincident points, collinear frames, zero vectors and similar."""


class NearDegenerate(DegenerateInput):
    """No coordinate is safely above the float tolerance."""


class PoleOfMap(PentagramError, ZeroDivisionError):
    """A birational map was evaluated on its indeterminacy locus.

    ``factor`` names the vanishing denominator.
    """

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class UndefinedOnAxes(PentagramError, ValueError):
    pass


class SingularLevel(PentagramError, ValueError):
    pass


class ResolutionTooCoarse(PentagramError, RuntimeError):
    pass


class SeedOffCurve(PentagramError, ValueError):
    pass


class InvalidRotation(PentagramError, ValueError):
    pass


class Inconclusive(PentagramError, RuntimeError):
    pass


class NoClosure(PentagramError, RuntimeError):
    pass


class NotSymmetric(PentagramError, ValueError):
    pass


class CalibrationFailed(PentagramError, RuntimeError):
    pass
