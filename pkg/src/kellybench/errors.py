"""Exception hierarchy for kellybench.

All domain-level failures derive from KellyBenchError so callers can catch
one base class; ValueError is mixed in for the input-validation family so
generic numeric code that expects ValueError keeps working.
"""


class KellyBenchError(Exception):
    """Base class for all kellybench errors."""


class DomainError(KellyBenchError, ValueError):
    """An input is outside the mathematical domain of the operation."""


class NoEdgeError(DomainError):
    """The game has no positive edge (p < 1/2): the bet is not placed."""


class DegenerateGameError(DomainError):
    """The requested quantity does not exist for a deterministic game."""


class SeriesInvalidError(DomainError):
    """The small-stake series approximation is outside its validity region."""


class ApproximationDomainError(DomainError):
    """A linearized formula was requested outside its accuracy guard."""


class ResourceGuardError(KellyBenchError):
    """An enumeration or simulation would exceed the configured size guard."""
