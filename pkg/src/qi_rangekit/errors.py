"""Exception types shared across the package.

Everything derives from :class:`RangeKitError` so callers (notably the CLI)
can map any package failure to a stable exit code in one place.
"""

from __future__ import annotations


class RangeKitError(Exception):
    """Base class for all qi_rangekit errors."""


class DomainError(RangeKitError, ValueError):
    """An input is outside the physical/mathematical domain of an operation."""


class CutoffError(RangeKitError, ValueError):
    """A Fock-space truncation is too small for the requested tail tolerance."""


class TableParseError(RangeKitError, ValueError):
    """An attenuation CSV is malformed (bad header, unparsable row)."""


class TableValidationError(RangeKitError, ValueError):
    """An attenuation table violates its ordering/sign invariants."""


class FrequencySpanError(RangeKitError, ValueError):
    """A frequency lookup fell outside the table span; no extrapolation.

    Carries the valid span so callers can report it.
    """

    def __init__(self, message: str, span_ghz: tuple[float, float]):
        super().__init__(message)
        self.span_ghz = span_ghz


class UnphysicalGeometryError(RangeKitError, ValueError):
    """A computed transmissivity exceeded 1 (far-field model misuse)."""


class CovarianceNotPSDError(RangeKitError, ValueError):
    """A covariance matrix is not positive semi-definite beyond round-off.

    Carries the offending (most negative) eigenvalue.
    """

    def __init__(self, message: str, eigenvalue: float):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class InsufficientTrialsError(RangeKitError, ValueError):
    """Too few Monte Carlo trials to resolve the requested probability."""


class NoDetectionError(RangeKitError):
    """The target is undetectable even at near-zero range."""


class ConfigError(RangeKitError, ValueError):
    """A scenario configuration file could not be loaded or validated."""
