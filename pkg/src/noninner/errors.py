"""Exception types shared across the package."""

from __future__ import annotations


class PresentationError(ValueError):
    """A presentation violates the structural rules for weighted
    power-commutator data (bad exponent range, non-ascending word,
    relation referring to a generator of too-low index, and so on)."""


class InconsistentPresentationError(ValueError):
    """The presentation is syntactically valid but does not define a
    group of order p**ngens.  Carries the overlap witness that failed."""

    def __init__(self, message: str, witness: "object" = None) -> None:
        super().__init__(message)
        self.witness = witness


class OrderBoundError(ValueError):
    """Enumeration of group elements exceeded the configured bound."""


class PcpSyntaxError(ValueError):
    """A .pcp file failed to parse.  Carries line/column of the offence."""

    def __init__(self, line: int, column: int, reason: str) -> None:
        super().__init__(f"line {line}, column {column}: {reason}")
        self.line = line
        self.column = column
        self.reason = reason


class SelectionError(RuntimeError):
    """An eligible group failed one of the guaranteed selection steps
    (no valid witness subgroup, no generator pair, ...).  Seeing this
    means either the eligibility gate or the selection logic is wrong."""


class TheoremViolationError(RuntimeError):
    """Both lifted automorphisms of an eligible group turned out inner.
    The construction guarantees at least one is not, so this indicates
    a bug rather than a property of the input."""
