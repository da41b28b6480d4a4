"""Text encodings for strings over the reduction alphabet and friends.

Two interchange forms exist:

* compact: one character per symbol via a fixed bijective map
  (a1→'A', a2→'B', b→'b', e0→'E', e→'e', c1→'(', c2→')', x→'x',
  y→'y').  Any other single lowercase letter or digit passes through
  as itself, so ad-hoc alphabets like {a, b, c} also read naturally.
  This is the default because reduction strings run to thousands of
  symbols.
* tokens: whitespace-separated symbol tokens, fully general.

Decoding never guesses: an unknown character is a ParseError with its
column.  Alphabet inference is deterministic: token sets that fit the
reduction alphabet get exactly that alphabet (canonical symbol order);
anything else gets the sorted set of its own tokens.
"""

from __future__ import annotations

import string

from .core import Alphabet, Str
from .errors import ParseError
from .reduction import REDUCTION_ALPHABET, REDUCTION_SYMBOLS

COMPACT_OF_TOKEN = {
    "a1": "A",
    "a2": "B",
    "b": "b",
    "e0": "E",
    "e": "e",
    "c1": "(",
    "c2": ")",
    "x": "x",
    "y": "y",
}
TOKEN_OF_COMPACT = {v: k for k, v in COMPACT_OF_TOKEN.items()}

_PASSTHROUGH = set(string.ascii_lowercase + string.digits)
_TOKEN_CHARS = set(string.ascii_letters + string.digits + "_")


def encode_compact(s: Str) -> str:
    """One line of compact characters; raises ValueError if not encodable."""
    out = []
    for token in s.tokens():
        if token in COMPACT_OF_TOKEN:
            out.append(COMPACT_OF_TOKEN[token])
        elif len(token) == 1 and token in _PASSTHROUGH:
            out.append(token)
        else:
            raise ValueError(f"token {token!r} has no compact encoding")
    return "".join(out)


def try_encode_compact(s: Str) -> str | None:
    try:
        return encode_compact(s)
    except ValueError:
        return None


def decode_compact(text: str) -> list[str]:
    """Characters to symbol tokens; ParseError carries the bad column."""
    tokens = []
    for col, ch in enumerate(text, start=1):
        if ch in TOKEN_OF_COMPACT:
            tokens.append(TOKEN_OF_COMPACT[ch])
        elif ch in _PASSTHROUGH:
            tokens.append(ch)
        else:
            raise ParseError(f"unknown character {ch!r}", column=col)
    return tokens


def split_tokens(text: str) -> list[str]:
    """Whitespace-separated tokens; validates the token character set."""
    tokens = text.split()
    for i, token in enumerate(tokens, start=1):
        if not token or any(ch not in _TOKEN_CHARS for ch in token):
            raise ParseError(f"bad token {token!r}", column=i)
    return tokens


def infer_alphabet(token_lists: list[list[str]]) -> Alphabet:
    """Deterministic alphabet for a family of strings parsed together."""
    seen = {t for tokens in token_lists for t in tokens}
    if seen <= set(REDUCTION_SYMBOLS):
        return REDUCTION_ALPHABET
    return Alphabet(tuple(sorted(seen)))


def parse_strings(texts: list[str], tokens: bool = False) -> list[Str]:
    """Parse several input strings over one shared inferred alphabet."""
    token_lists = [split_tokens(t) if tokens else decode_compact(t) for t in texts]
    alphabet = infer_alphabet(token_lists)
    return [Str.from_tokens(alphabet, toks) for toks in token_lists]
