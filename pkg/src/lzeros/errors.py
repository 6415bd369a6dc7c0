"""Exception hierarchy shared by all lzeros modules."""


class LZerosError(Exception):
    """Base class for every error raised by this package."""


class DomainError(LZerosError, ValueError):
    """An argument lies outside the domain where a function is defined."""


class PoleError(DomainError):
    """Evaluation requested at a pole."""


class NonConvergence(LZerosError, ArithmeticError):
    """A series, quadrature or refinement loop did not meet its tolerance."""


class BoundaryZero(NonConvergence):
    """A zero lies on (or numerically too close to) a counting contour."""


class NotPrimitive(DomainError):
    """Operation requires a primitive character."""


class NotFundamental(DomainError):
    """Integer is not a fundamental discriminant."""
