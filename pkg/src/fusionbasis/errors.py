"""Exception hierarchy shared by all modules."""


class FusionBasisError(Exception):
    """Base class for errors raised by this package."""


class DomainError(FusionBasisError, ValueError):
    """An argument lies outside the domain of an operation."""


class InconsistencyError(FusionBasisError):
    """A computed object contradicts an invariant it should satisfy.

    Raised e.g. when a vector that solves a system has no decomposition over
    a supposedly complete set of generators.
    """


class InternalError(FusionBasisError, RuntimeError):
    """A safety cap was exceeded; indicates a bug rather than bad input."""
