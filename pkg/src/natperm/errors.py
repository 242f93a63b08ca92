"""Error taxonomy shared across the package.

Every failure that callers are expected to branch on gets its own class.
Resource exhaustion (FuelExhausted, Unresolved) is deliberately separate
from proven negative results: NoPreimage subclasses FuelExhausted because
an unbounded scan is still the operational symptom, but it additionally
certifies that no amount of extra fuel would help.
"""

# Shared scan budget. Forward evaluation never needs it; upward scans and
# carry lookahead are cut off after this many steps unless overridden.
DEFAULT_FUEL = 1 << 20


class NatPermError(Exception):
    """Base class for every package-specific error."""


class ParseError(NatPermError):
    """Malformed spec string or CLI input. Carries the offending position."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class FuelExhausted(NatPermError):
    """A bounded scan hit its fuel limit before resolving."""

    def __init__(self, point, fuel):
        self.point = point
        self.fuel = fuel
        super().__init__(f"scan from {point} exhausted fuel budget {fuel}")


class NoPreimage(FuelExhausted):
    """The scan provably cannot terminate: a declared tail swallows the run.

    Unlike a bare FuelExhausted this is a positive fact about the set, not
    a statement about the budget, so it maps to the not-onto exit path.
    """

    def __init__(self, point):
        self.point = point
        self.fuel = 0
        NatPermError.__init__(
            self, f"{point} has no preimage: its run is certified infinite"
        )


class NoInverse(NatPermError):
    """The permutation carries no inverse oracle."""


class Unresolved(NatPermError):
    """A carry chain stalled inside its lookahead window.

    index names the smallest undecided digit, or the failing iteration
    when raised from an orbit.
    """

    def __init__(self, index, message=None):
        self.index = index
        if message is None:
            message = f"carry at digit {index} undetermined within fuel window"
        super().__init__(message)


class RepeatedEntry(NatPermError):
    """A swap sequence listed the same position twice."""


class BoundTooSmall(NatPermError):
    """The requested array is too short to absorb every listed swap."""


class BadOrder(NatPermError):
    """Transposition endpoints must satisfy i < j."""


class DuplicateEntries(NatPermError):
    """A witness tuple repeats an element."""


class LengthMismatch(NatPermError):
    """Paired tuples must have equal length."""


class NoDifference(NatPermError):
    """Two sets agree everywhere inside the scanned window."""


class TooFewDigits(NatPermError):
    """A point carries fewer digits than the bin count requires."""


class AllOnes(NatPermError):
    """A digit list consisting only of ones has no canonical rewrite."""
