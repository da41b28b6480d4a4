"""Exception types shared across the package.

Every error raised by library code derives from SquareShuffleError so
callers can catch one base class at API boundaries (the CLI does exactly
that to map failures onto exit codes).
"""

from __future__ import annotations


class SquareShuffleError(Exception):
    """Base class for all package errors."""


class InvalidSymbol(SquareShuffleError):
    """A token is not part of the alphabet in use."""


class InvalidMatching(SquareShuffleError):
    """A matching is structurally unusable for the requested operation."""


class UnsupportedArity(SquareShuffleError):
    """A k-way shuffle query exceeds the supported number of strands."""


class NotApplicable(SquareShuffleError):
    """A specialised decision procedure was invoked outside its domain."""


class IllegalStep(SquareShuffleError):
    """A queue-automaton action is not legal in the given configuration."""


class NoInput(SquareShuffleError):
    """A queue-automaton step was attempted with no input left."""


class InvalidTrace(SquareShuffleError):
    """A step sequence does not replay to an accepting computation."""


class TooLarge(SquareShuffleError):
    """Input exceeds a hard size cap meant to keep exact solvers honest."""


class MalformedInstance(SquareShuffleError):
    """A 3-Partition instance violates a structural requirement."""


class InvalidSolution(SquareShuffleError):
    """A claimed 3-Partition solution does not solve the instance."""


class ParseError(SquareShuffleError):
    """Input text could not be parsed; carries a position for diagnostics."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
