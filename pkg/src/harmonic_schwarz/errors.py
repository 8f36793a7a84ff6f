"""Exception types raised across the package."""

from __future__ import annotations


class HarmonicSchwarzError(Exception):
    """Base class for every error raised by this package."""


class DomainError(HarmonicSchwarzError, ValueError):
    """An argument lies outside the domain of the operation."""


class TruncationOrderError(DomainError):
    """A derivative or coefficient beyond the truncation order was requested."""


class CompositionDomainError(DomainError):
    """The inner series does not start at the outer series' center."""


class PartitionCapError(DomainError):
    pass


class ArityError(DomainError):
    """Too few outer derivatives were supplied for a Faa di Bruno sum."""


class CoefficientBoundError(DomainError):
    """The coefficient aggregate exceeds the 4/pi bound valid for harmonic self-maps."""


class CriticalPointError(HarmonicSchwarzError, ArithmeticError):
    """The analytic part has a vanishing derivative where it was divided by."""


class NotAZeroError(HarmonicSchwarzError, ValueError):
    pass


class NotSensePreservingError(HarmonicSchwarzError, ValueError):
    """The co-analytic part dominates at a zero, so the map reverses orientation."""


class CanonicalizationError(HarmonicSchwarzError, ValueError):
    pass


class NormalizationError(HarmonicSchwarzError, ValueError):
    pass


class GenerationError(HarmonicSchwarzError, RuntimeError):
    """Rejection sampling ran out of budget."""


class WitnessInvalidError(HarmonicSchwarzError, ValueError):
    """The boundary point is not mapped onto the unit circle."""
