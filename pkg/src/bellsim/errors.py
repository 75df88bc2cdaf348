"""Exception types shared across the package.

Plain argument misuse (bad lengths, out-of-range indices) raises ValueError;
the classes here carry semantics the CLI maps to exit codes or that callers
are expected to catch.
"""


class BellSimError(Exception):
    """Base class for package-specific failures."""


class CapacityError(BellSimError):
    """Requested problem size exceeds what the implementation supports."""


class ConfigError(BellSimError):
    """Invalid configuration or input file."""


class ConvergenceError(BellSimError):
    """Iterative solver failed to converge within its iteration cap."""


class UnsupportedGateError(BellSimError):
    """Gate is not eligible for the requested operation (e.g. parameter shift)."""


class TrainingAbortError(BellSimError):
    """Training hit a non-recoverable state (NaN gradient or energy)."""


class ReadoutModelError(BellSimError):
    """Readout confusion matrix is singular or otherwise invalid."""


class SignalsInconsistentError(BellSimError):
    """Measured signals violate physical bounds beyond noise tolerance."""


class FitError(BellSimError):
    """Least-squares design is degenerate for the requested fit."""
