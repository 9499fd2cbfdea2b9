"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the set where the operation is defined."""


class NoBracketError(ValueError):
    """A root-finding problem has no sign change to bracket."""


class PreconditionError(ValueError):
    """A mathematical hypothesis required by an operation does not hold.

    ``witness``, when set, is a point at which the hypothesis fails.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InconsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""
