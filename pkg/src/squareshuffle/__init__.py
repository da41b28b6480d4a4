"""Square-shuffle recognition toolkit.

Decide whether a string is an interleaving of two given strings, or of
a string with itself; search the associated queue automaton; and build
the 3-Partition reduction strings whose squareness encodes partition
solvability, including explicit witnesses for solvable instances.
"""

from .core import Alphabet, Matching, MatchingReport, Str
from .qautomaton import Config, SearchOutcome, Step, Trace
from .reduction import (
    Assignment,
    PartitionInstance,
    PartitionSolution,
    ReductionOutput,
    Span,
)
from .shuffle import ShuffleWitness
from .square import SquareVerdict

__all__ = [
    "Alphabet",
    "Assignment",
    "Config",
    "Matching",
    "MatchingReport",
    "PartitionInstance",
    "PartitionSolution",
    "ReductionOutput",
    "SearchOutcome",
    "ShuffleWitness",
    "Span",
    "SquareVerdict",
    "Step",
    "Str",
    "Trace",
]

__version__ = "0.1.0"
