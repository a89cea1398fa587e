"""Exception hierarchy shared by every tetrafit module."""


class TetrafitError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateTetrahedron(TetrafitError):
    """The four vertices are (numerically) coplanar."""


class InvalidCount(TetrafitError, ValueError):
    pass


class InvalidConfig(TetrafitError, ValueError):
    pass


class EmptySample(TetrafitError, ValueError):
    pass


class TooFewPoints(TetrafitError, ValueError):
    pass


class ComplexRoots(TetrafitError):
    """A moment quartic has a root with a non-negligible imaginary part.

    Usually means the sample is too small, or was not drawn uniformly from a
    tetrahedron.
    """

    def __init__(self, message, max_imag=float("nan"), axis=None):
        super().__init__(message)
        self.max_imag = max_imag
        self.axis = axis


# Errors that mean "this sample could not be fitted", as opposed to misuse.
ESTIMATION_ERRORS = (ComplexRoots, DegenerateTetrahedron, TooFewPoints, EmptySample)
