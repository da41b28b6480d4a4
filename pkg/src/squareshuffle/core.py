"""Alphabet-aware strings and non-nesting position matchings.

A `Str` is a sequence of symbol indices over an explicit `Alphabet`.
Symbols are short tokens rather than single characters, so multi-letter
names like ``a1`` or ``e0`` are first-class.  Indices are stored in a
`bytes` buffer: compact, hashable, cheap to slice, and fast to count.
Alphabets used here are tiny (at most a few dozen symbols), so a byte
per position is plenty.

A `Matching` pairs up positions of a host string.  The matchings this
package cares about are *non-nesting perfect matchings with equal
symbols at both endpoints*: exactly the certificates that a string is a
square shuffle.  `validate_matching` checks the three defining
properties and reports the first violation; `extract_halves` turns an
accepted matching into the repeated half and an interleave labelling.

All positions are 0-indexed.  Pairs are stored smaller endpoint first;
the smaller endpoint always belongs to the first copy of the half.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import InvalidMatching, InvalidSymbol

Symbol = str


@dataclass(frozen=True)
class Alphabet:
    """An ordered collection of distinct symbol tokens."""

    symbols: tuple[Symbol, ...]

    def __post_init__(self) -> None:
        if not self.symbols:
            raise ValueError("alphabet must contain at least one symbol")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols must be distinct")
        if len(self.symbols) > 255:
            raise ValueError("alphabets wider than 255 symbols are not supported")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.symbols)})

    @classmethod
    def of(cls, symbols: Iterable[Symbol]) -> "Alphabet":
        return cls(tuple(symbols))

    @property
    def size(self) -> int:
        return len(self.symbols)

    def index(self, symbol: Symbol) -> int:
        try:
            return self._index[symbol]  # type: ignore[attr-defined]
        except KeyError:
            raise InvalidSymbol(f"symbol {symbol!r} not in alphabet {self.symbols}") from None

    def __contains__(self, symbol: Symbol) -> bool:
        return symbol in self._index  # type: ignore[attr-defined]

    def __len__(self) -> int:
        return len(self.symbols)


@dataclass(frozen=True)
class Str:
    """A string over an explicit alphabet, stored as symbol indices."""

    alphabet: Alphabet
    data: bytes

    def __post_init__(self) -> None:
        n = self.alphabet.size
        if any(b >= n for b in self.data):
            raise InvalidSymbol("symbol index out of range for alphabet")

    # -- construction -------------------------------------------------

    @classmethod
    def from_tokens(cls, alphabet: Alphabet, tokens: Iterable[Symbol]) -> "Str":
        return cls(alphabet, bytes(alphabet.index(t) for t in tokens))

    @classmethod
    def from_text(cls, alphabet: Alphabet, text: str) -> "Str":
        """Build from a character string; each character must be a token."""
        return cls.from_tokens(alphabet, text)

    @classmethod
    def empty(cls, alphabet: Alphabet) -> "Str":
        return cls(alphabet, b"")

    # -- sequence protocol --------------------------------------------

    def __len__(self) -> int:
        return len(self.data)

    def __getitem__(self, i: Union[int, slice]) -> Union[Symbol, "Str"]:
        if isinstance(i, slice):
            return Str(self.alphabet, self.data[i])
        return self.alphabet.symbols[self.data[i]]

    def __iter__(self) -> Iterator[Symbol]:
        symbols = self.alphabet.symbols
        return (symbols[b] for b in self.data)

    def __add__(self, other: "Str") -> "Str":
        if other.alphabet != self.alphabet:
            raise ValueError("cannot concatenate strings over different alphabets")
        return Str(self.alphabet, self.data + other.data)

    def __mul__(self, n: int) -> "Str":
        return Str(self.alphabet, self.data * n)

    def tokens(self) -> tuple[Symbol, ...]:
        symbols = self.alphabet.symbols
        return tuple(symbols[b] for b in self.data)

    def token_text(self, sep: str = " ") -> str:
        return sep.join(self.tokens())

    def __repr__(self) -> str:
        return f"Str({self.token_text()!r})"


@dataclass(frozen=True)
class Matching:
    """A set of position pairs, each stored smaller endpoint first.

    Structural well-formedness (j < k, in-range, disjointness, symbol
    equality, non-nesting) is the business of `validate_matching`; the
    constructor only canonicalizes pair order and rejects duplicates.
    """

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for j, k in self.pairs:
            if j >= k or j < 0:
                raise InvalidMatching(f"pair ({j}, {k}) is not an ordered position pair")
        if len(set(self.pairs)) != len(self.pairs):
            raise InvalidMatching("duplicate pairs in matching")
        object.__setattr__(self, "pairs", tuple(sorted(self.pairs)))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> "Matching":
        normalized = []
        for pair in pairs:
            if len(pair) != 2:
                raise InvalidMatching(f"pair {tuple(pair)!r} does not have two endpoints")
            j, k = int(pair[0]), int(pair[1])
            if j > k:
                j, k = k, j
            normalized.append((j, k))
        return cls(tuple(sorted(normalized)))

    @classmethod
    def from_json(cls, text: str) -> "Matching":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidMatching(f"matching JSON does not parse: {exc}") from None
        if not isinstance(obj, list) or not all(
            isinstance(p, list) and len(p) == 2 and all(isinstance(e, int) for e in p)
            for p in obj
        ):
            raise InvalidMatching("matching JSON must be an array of two-element integer arrays")
        return cls.from_pairs(obj)

    def to_json(self) -> str:
        return json.dumps([list(p) for p in self.pairs])

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)


@dataclass(frozen=True)
class MatchingReport:
    """Outcome of validate_matching: ok, or the first violated invariant."""

    ok: bool
    violation: Optional[str] = None  # "perfect" | "symbol" | "nesting"
    offenders: tuple[tuple[int, int], ...] = ()

    def __bool__(self) -> bool:
        return self.ok


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def count_symbol(w: Str, s: Symbol) -> int:
    """Number of occurrences of symbol `s` in `w`."""
    return w.data.count(w.alphabet.index(s))


def count_alternations(z: Str, s1: Symbol, s2: Symbol) -> int:
    """Largest k such that (s1 s2)^k is a subsequence of `z`.

    Greedy left-to-right scan: repeatedly take the next s1, then the
    next s2 after it.  Greedy is optimal here because any alternating
    subsequence can be pushed leftward pair by pair.
    """
    if s1 == s2:
        raise ValueError("alternation symbols must differ")
    b1 = z.alphabet.index(s1)
    b2 = z.alphabet.index(s2)
    k = 0
    want = b1
    for b in z.data:
        if b == want:
            if want == b2:
                k += 1
                want = b1
            else:
                want = b2
    return k


def validate_matching(w: Str, m: Matching) -> MatchingReport:
    """Check m against the three matching invariants on host string w.

    Checks run in a fixed order and the report names the first failure:
    "perfect" (every position in exactly one pair), then "symbol"
    (equal endpoint symbols), then "nesting" (no pair strictly inside
    another).  Out-of-range positions are a hard error, not a report.
    """
    n = len(w)
    for j, k in m.pairs:
        if k >= n:
            raise InvalidMatching(f"pair ({j}, {k}) references positions beyond length {n}")

    seen = [0] * n
    for j, k in m.pairs:
        seen[j] += 1
        seen[k] += 1
    if any(c != 1 for c in seen):
        offenders = tuple(pair for pair in m.pairs if seen[pair[0]] != 1 or seen[pair[1]] != 1)
        return MatchingReport(False, "perfect", offenders)

    data = w.data
    for j, k in m.pairs:
        if data[j] != data[k]:
            return MatchingReport(False, "symbol", ((j, k),))

    # Non-nesting check by FIFO replay.  Walk positions left to right,
    # enqueue a pair at its smaller endpoint; at a larger endpoint the
    # closing pair must be the oldest open one, otherwise the two pairs
    # nest.  This is exactly the queue discipline that matchings of
    # square shuffles obey, and it is linear time.
    opens_at = {}
    closes_at = {}
    for pair in m.pairs:
        opens_at[pair[0]] = pair
        closes_at[pair[1]] = pair
    queue: deque[tuple[int, int]] = deque()
    for p in range(n):
        if p in opens_at:
            queue.append(opens_at[p])
        else:
            expected = queue.popleft()
            actual = closes_at[p]
            if actual is not expected:
                return MatchingReport(False, "nesting", (expected, actual))
    return MatchingReport(True)


def extract_halves(w: Str, m: Matching) -> tuple[Str, tuple[int, ...]]:
    """Split w along an accepted matching into (u, labels).

    u is the subsequence of w at the smaller endpoints, in position
    order; labels[p] is 1 if position p is a smaller endpoint (first
    copy) and 2 otherwise.  The i-th label-1 position is paired with
    the i-th label-2 position: that is the non-nesting property at
    work, no reordering ever happens.
    """
    report = validate_matching(w, m)
    if not report.ok:
        raise InvalidMatching(f"matching invalid: {report.violation} violation at {report.offenders}")
    labels = [2] * len(w)
    for j, _k in m.pairs:
        labels[j] = 1
    u_data = bytes(w.data[p] for p in range(len(w)) if labels[p] == 1)
    return Str(w.alphabet, u_data), tuple(labels)


def is_subsequence(u: Str, w: Str) -> bool:
    """True iff u embeds order-preservingly in w."""
    if u.alphabet != w.alphabet:
        raise ValueError("subsequence test requires a common alphabet")
    it = iter(w.data)
    return all(b in it for b in u.data)
