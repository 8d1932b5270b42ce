"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid algebra, weight or run configuration."""


class CoefficientOverflow(ArithmeticError):
    """A series coefficient left the checked 64-bit range."""


class UnsoundTruncation(ArithmeticError):
    """The exponent form is not certifiably positive definite."""


class InternalInconsistency(AssertionError):
    """An invariant that must always hold was violated."""
