"""Exception types raised across the package."""


class BiphotonError(Exception):
    """Base class for all package errors."""


class InvalidConfigError(BiphotonError, ValueError):
    """A parameter violates a physical invariant (non-positive length, angle out of range...)."""


class ConfigParseError(BiphotonError):
    """A config file could not be parsed. Carries the offending line and column."""

    def __init__(self, message, line=None, column=None, path=None):
        self.line = line
        self.column = column
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:{column if column is not None else 1}: "
        super().__init__(where + message)


class QuadratureError(BiphotonError):
    """Numerical integration did not reach the requested tolerance."""


class ResolutionError(BiphotonError):
    """A discretised oracle is not converged at the requested resolution."""


class EvanescentPumpError(BiphotonError):
    """The pump longitudinal wavenumber became imaginary (non-paraxial input)."""
