"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid polynomial or quadrature parameters."""


class IndexRangeError(ValueError):
    """A basis index lies outside the range where the family is defined."""


class ScaledFormRequired(ValueError):
    """The requested raw field is singular at the origin.

    Only the r^{2k}- or Sigma-multiplied combinations are polynomial there.
    """


class FrameUndefinedError(ValueError):
    """The polar frame does not exist at the origin."""


class FactorizationError(ArithmeticError):
    """LU or Gram-Schmidt broke down (weight not positive definite)."""


class TruncationError(ValueError):
    """An operator result does not fit in the requested truncation."""


class DomainError(ValueError):
    """A finite-difference stencil would leave the domain."""
