"""Exception hierarchy.

``DomainError`` subclasses signal that an operation's mathematical
precondition does not hold for the given input (the CLI maps these to
exit code 2). ``FormatError`` covers unreadable documents (exit code 1).
"""


class BeliefError(Exception):
    """Base class for every error raised by geocond."""


class FormatError(BeliefError):
    """A mass-function document could not be parsed."""


class InvalidMass(BeliefError, ValueError):
    """Values do not form a valid (signed) mass assignment."""


class FrameMismatch(BeliefError, ValueError):
    """Two set functions live on different frames."""


class DomainError(BeliefError):
    """An operation's precondition fails for this input."""


class EmptyEvent(DomainError, ValueError):
    """The empty set was given where a nonempty event is required."""


class NotABeliefFunction(DomainError, ValueError):
    """Moebius inversion recovered a negative mass."""


class WeightMismatch(DomainError, ValueError):
    """Convex-combination weights are negative or do not sum to one."""


class BadCount(DomainError, ValueError):
    """Requested number of focal elements is impossible on this frame."""


class TotalConflict(DomainError):
    """Dempster normalization constant vanishes."""

    def __init__(self, kappa, message=None):
        self.kappa = kappa
        super().__init__(message or f"total conflict (kappa = {kappa:.6g}); Dempster's rule is undefined")


class ZeroBelief(DomainError):
    """Geometric (Suppes-Zanotti) conditioning on an event with b(B) = 0."""


class UndefinedDenominator(DomainError):
    """A per-event ratio in a closed-form conditional has a zero denominator."""

    def __init__(self, event, message):
        self.event = event
        super().__init__(message)


class UndefinedConditional(DomainError):
    """A conditioning-induced combination hit a focal element it cannot condition on."""

    def __init__(self, event, message):
        self.event = event
        super().__init__(message)


class WrongDimensions(DomainError, ValueError):
    """The ternary plot needs a 3-element frame and a 2-element event."""


class TooManyVertices(BeliefError):
    """Explicit vertex enumeration of a polytope would exceed the cap."""
