"""Exception hierarchy and enumeration caps."""

from __future__ import annotations

# Default enumeration caps. Callers may raise them up to HARD_CEILING_FACTOR times.
ORDER_CAP = 5000
SIMPLEX_CAP = 10**6
LINE_CAP = 10**5
HARD_CEILING_FACTOR = 10


class VAError(Exception):
    """Base class for all library errors."""


class MalformedInputError(VAError, ValueError):
    """Input data violates a type invariant (rank mismatch, bad table, ...)."""


class CapacityError(VAError):
    """An enumeration would exceed its configured cap."""


class UnknownGroupError(VAError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown group"


class BadPrimeError(VAError, ValueError):
    """A prime fails the congruence conditions required by an operation."""


class HypothesisError(VAError):
    """A lemma's hypotheses are not met by the supplied data."""


class PreconditionError(VAError, ValueError):
    """An operation's documented precondition does not hold."""


class ConsistencyError(VAError):
    """An internal postcondition failed; indicates corrupted data or a bug."""


def check_cap(size: int, cap: int, what: str) -> None:
    if size > cap:
        raise CapacityError(f"{what} of size {size} exceeds cap {cap}")


def checked_cap(requested: int | None, default: int) -> int:
    """Resolve a user cap override against the hard ceiling."""
    if requested is None:
        return default
    if requested < 1:
        raise PreconditionError(f"cap must be positive, got {requested}")
    ceiling = default * HARD_CEILING_FACTOR
    if requested > ceiling:
        raise PreconditionError(f"cap {requested} exceeds hard ceiling {ceiling}")
    return requested
