"""Exception types shared across the library."""


class SectorLabError(Exception):
    """Base class for all sectorlab errors."""


class DomainError(SectorLabError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class InvalidWeightError(SectorLabError):
    """A weight evaluator returned a non-positive or non-finite value."""


class MissingCertificateError(SectorLabError):
    """An operation requires a growth certificate the weight does not carry."""


class EvaluationError(SectorLabError):
    """A user-supplied evaluator returned non-finite values."""


class WitnessInvalidError(SectorLabError):
    """The separation-witness construction is unavailable for this input."""


class ConfigError(SectorLabError):
    """A scenario configuration failed validation."""
