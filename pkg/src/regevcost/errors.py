"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Raised for bad user-supplied configuration (unknown preset, missing data)."""


class InvariantViolation(AssertionError):
    """Raised when an internal consistency check fails."""


class NonInvertibleError(ArithmeticError):
    """Raised when a multiplication-oracle operand is not invertible modulo N."""
