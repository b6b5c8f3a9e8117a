"""Exception taxonomy shared across the package."""

from __future__ import annotations


class VwnekError(Exception):
    """Base class for all package-specific errors."""


class SingularPoint(VwnekError):
    """A rational evaluation point hit a vanishing denominator factor."""


class SpecializedWeightTrivial(VwnekError):
    """A substitution sent some weight to s^0 * Y^0, so a factor 1 - w^(-1)
    degenerates; the direction must be resampled."""


class PoleCancellationFailure(VwnekError):
    """A product of chart series kept a nonzero coefficient in negative
    u-degrees where the complete-surface result must be regular."""


class SeriesOrderInsufficient(VwnekError):
    """A series operation needed more terms than the inputs carry."""


class WindowExceeded(VwnekError):
    """A u-Laurent coefficient outside the tracked exactness window was
    requested."""


class InvalidSurface(VwnekError):
    """A surface description failed validation."""


class InvalidCone(VwnekError):
    """A chart index does not name a cone of the fan."""


class ExtractionRankDeficient(VwnekError):
    """The configuration list does not span the space of invariant vectors."""


class UniversalityResidual(VwnekError):
    """The overdetermined extraction system has a nonzero residual."""


class VerificationFailed(VwnekError):
    """An identity check came out unequal."""
