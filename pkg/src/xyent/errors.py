"""Exception types raised by the numerical engines."""


class XYEntError(Exception):
    """Base class for all named numerical failures."""


class QuadratureNonConvergence(XYEntError):
    """Adaptive quadrature could not reach the requested tolerance."""


class EigenNonConvergence(XYEntError):
    """An eigensolver failed to converge or received non-finite input."""


class NotPositive(XYEntError):
    """An assembled density matrix has a clearly negative eigenvalue."""


class ShapeViolation(XYEntError):
    """A two-spin state is not of the X shape required by the closed form."""


class SizeLimit(XYEntError):
    """A finite chain is too long for dense exact diagonalization."""


class NoBracket(XYEntError):
    """A thermal threshold could not be bracketed on the requested interval."""


class BisectionFailure(XYEntError):
    """A threshold quantity changed sign non-monotonically inside a bracket."""
