"""Exception hierarchy shared by all modules."""


class PclabError(Exception):
    pass


class DomainError(PclabError, ValueError):
    """An argument lies outside the domain of an operation."""


class ResourceError(PclabError, RuntimeError):
    """A configured search or memory budget was exhausted."""

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class PreconditionError(PclabError, ValueError):
    """A structural precondition (closedness, colourability, ...) failed."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvariantViolation(PclabError, AssertionError):
    """An internal invariant broke. Always a bug."""
