"""Exception hierarchy shared by all modules."""


class TournamentError(ValueError):
    """Base class for rejected inputs."""


class SizeMismatchError(TournamentError):
    pass


class BoundError(TournamentError):
    """Raised when a vertex count exceeds a configured search bound."""


class VertexError(TournamentError):
    """Out-of-range vertex, or an empty vertex set where one is required."""


class IntervalError(TournamentError):
    """A set that must be an interval is not."""

    def __init__(self, message, block=None):
        super().__init__(message)
        self.block = block


class IndecomposabilityError(TournamentError):
    pass


class PreconditionError(TournamentError):
    pass


class TheoremViolation(RuntimeError):
    """A statement that must hold on every instance failed on one.

    Carries the offending instance so the harness can record it.
    """

    def __init__(self, message, instance=None):
        super().__init__(message)
        self.instance = instance
