"""Shared fixtures and oracles for the test suite.

The showcase string (c1 x³ c2)² (c1 x² c2)² (c1 x c2)² is used across
modules: it is a square whose witness matchings all cross, and its
12-arc diagram is the package's standard demo.  SHOWCASE_MATCHING is
one specific accepting matching of it (the all-crossing one);
SHOWCASE_HALF is the half that matching induces.

`shuffle_oracle_set` enumerates interleavings the slow, obviously
correct way (choose the positions of the first string), giving an
oracle that is independent of the bitmask DP under test.
"""

from __future__ import annotations

import itertools
import random
import warnings

from squareshuffle.core import Alphabet, Matching, Str
from squareshuffle.reduction import BoundWarning, PartitionInstance, normalize

AB = Alphabet.of(("a", "b"))
ABC = Alphabet.of(("a", "b", "c"))

SHOWCASE_TEXT = "(xxx)(xxx)(xx)(xx)(x)(x)"
SHOWCASE_MATCHING = Matching.from_pairs(
    [
        (0, 5),
        (1, 6),
        (2, 7),
        (3, 11),
        (4, 13),
        (8, 15),
        (9, 17),
        (10, 18),
        (12, 19),
        (14, 21),
        (16, 22),
        (20, 23),
    ]
)
SHOWCASE_HALF = ("c1", "x", "x", "x", "c2", "x", "c2", "c1", "x", "c1", "x", "c2")
# The half induced by splitting the showcase string into its two
# consecutive copies of each squared factor.
SHOWCASE_HALF_STRAIGHT = ("c1", "x", "x", "x", "c2", "c1", "x", "x", "c2", "c1", "x", "c2")


def all_texts(symbols: str, max_len: int, min_len: int = 0):
    """Every string over `symbols` with min_len <= length <= max_len."""
    for n in range(min_len, max_len + 1):
        for tup in itertools.product(symbols, repeat=n):
            yield "".join(tup)


def shuffle_oracle_set(u: str, v: str) -> set[str]:
    """All interleavings of u and v, by enumerating u's position sets."""
    n = len(u) + len(v)
    out = set()
    for posset in itertools.combinations(range(n), len(u)):
        chars = [""] * n
        it_u = iter(u)
        it_v = iter(v)
        pos_u = set(posset)
        for i in range(n):
            chars[i] = next(it_u) if i in pos_u else next(it_v)
        out.add("".join(chars))
    return out


def random_interleave(rng: random.Random, u: str, v: str) -> str:
    """One uniform-ish interleaving of u and v."""
    labels = [1] * len(u) + [2] * len(v)
    rng.shuffle(labels)
    it_u = iter(u)
    it_v = iter(v)
    return "".join(next(it_u) if lab == 1 else next(it_v) for lab in labels)


def str_of(text: str, alphabet: Alphabet = ABC) -> Str:
    return Str.from_text(alphabet, text)


def normalize_quiet(values) -> PartitionInstance:
    """normalize() with the value-range warning silenced.

    Small hand-picked instances legitimately sit outside the strict
    range; tests that are not about the warning use this helper.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BoundWarning)
        return normalize(values)
