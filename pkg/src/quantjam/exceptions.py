"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of a function."""


class ShapeError(ValueError):
    """Matrix dimensions are inconsistent."""


class DimensionError(ValueError):
    """A requested subspace does not exist (e.g. empty orthogonal complement)."""


class NumericError(ArithmeticError):
    """A numerical routine failed (factorization breakdown, no convergence)."""


class UnsupportedConfigurationError(ValueError):
    """An oracle was asked for a configuration outside its exactness envelope."""


class ConfigError(ValueError):
    """An experiment configuration could not be parsed or validated."""

    def __init__(self, message, field=None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)
