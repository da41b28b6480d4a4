"""Shuffle membership by dynamic programming, with witness extraction.

`is_shuffle(u, v, w)` decides w = u ⊙ v in O(|u|·|v|) table cells.  The
table is walked one anti-diagonal at a time: after consuming t symbols
of w the reachable states are the prefix lengths i of u (with t - i of
v) that can produce w[:t].  Each anti-diagonal is a subset of
{0, …, |u|}, stored as a single Python integer bitmask, so one step of
the scan is a couple of shifts and masks regardless of |u|.  Memory is
O(min over the chosen side) and the constant factor is small enough to
run millions of queries in seconds.

`shuffle_witness` re-runs the scan from the right to get, for every
time t, the set of states that can still finish; a forward greedy walk
through those sets (preferring u on ties) then emits the
lexicographically least labelling with label 1 first.

`is_k_shuffle` generalizes to k strands with a reachable-set BFS over
index tuples; arity is capped because the lattice grows like n^k.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Str
from .errors import UnsupportedArity

MAX_ARITY = 4


@dataclass(frozen=True)
class ShuffleWitness:
    """Interleave labelling: labels[t] is 1 if w[t] came from u, else 2."""

    labels: tuple[int, ...]


def _require_common_alphabet(*strs: Str) -> None:
    first = strs[0].alphabet
    for other in strs[1:]:
        if other.alphabet != first:
            raise ValueError("shuffle arguments must share one alphabet")


def _char_masks(data: bytes, nsym: int) -> list[int]:
    """masks[c] has bit p set iff data[p] == c."""
    masks = [0] * nsym
    for p, b in enumerate(data):
        masks[b] |= 1 << p
    return masks


def _v_bits(vrev: int, t: int, len_v: int) -> int:
    """Bitmask of states i where consuming w[t] from v is symbol-legal.

    State i at time t means j = t - i symbols of v are consumed, so the
    v-transition needs v[t - i] == w[t].  With vrev holding v's
    positions bit-reversed, those i values are vrev shifted by
    t - (len_v - 1).
    """
    shift = t - (len_v - 1)
    return vrev << shift if shift >= 0 else vrev >> -shift


def is_shuffle(u: Str, v: Str, w: Str) -> bool:
    """True iff w is an interleaving of u and v."""
    _require_common_alphabet(u, v, w)
    a, b, target = u.data, v.data, w.data
    if len(a) + len(b) != len(target):
        return False
    nsym = w.alphabet.size
    um = _char_masks(a, nsym)
    vm = _char_masks(b, nsym)
    vrev = [0] * nsym
    top = len(b) - 1
    for c in range(nsym):
        bits = vm[c]
        rev = 0
        while bits:
            low = bits & -bits
            rev |= 1 << (top - low.bit_length() + 1)
            bits ^= low
        vrev[c] = rev
    full = (1 << (len(a) + 1)) - 1
    reach = 1
    len_v = len(b)
    for t, c in enumerate(target):
        reach = (((reach & um[c]) << 1) | (reach & _v_bits(vrev[c], t, len_v))) & full
        if not reach:
            return False
    return bool(reach >> len(a) & 1)


def shuffle_witness(u: Str, v: Str, w: Str) -> ShuffleWitness | None:
    """A labelling witnessing w = u ⊙ v, or None.

    Deterministic: at each position the walk consumes from u whenever
    doing so can still reach the end (prefer-u tie-break).
    """
    _require_common_alphabet(u, v, w)
    a, b, target = u.data, v.data, w.data
    n = len(target)
    if len(a) + len(b) != n:
        return None
    nsym = w.alphabet.size
    um = _char_masks(a, nsym)
    vm = _char_masks(b, nsym)
    vrev = [0] * nsym
    top = len(b) - 1
    for c in range(nsym):
        bits = vm[c]
        rev = 0
        while bits:
            low = bits & -bits
            rev |= 1 << (top - low.bit_length() + 1)
            bits ^= low
        vrev[c] = rev

    # finish[t] = states at time t from which w[t:] can still be built.
    full = (1 << (len(a) + 1)) - 1
    finish = [0] * (n + 1)
    finish[n] = 1 << len(a)
    len_v = len(b)
    for t in range(n - 1, -1, -1):
        c = target[t]
        nxt = finish[t + 1]
        finish[t] = (((nxt >> 1) & um[c]) | (nxt & _v_bits(vrev[c], t, len_v))) & full
    if not finish[0] & 1:
        return None

    labels = []
    i = 0
    for t, c in enumerate(target):
        if i < len(a) and a[i] == c and finish[t + 1] >> (i + 1) & 1:
            labels.append(1)
            i += 1
        else:
            # v must apply: symbol equality and finishability both hold
            # because state i survived into finish[t].
            labels.append(2)
    return ShuffleWitness(tuple(labels))


def split_by_labels(w: Str, labels: tuple[int, ...]) -> tuple[Str, Str]:
    """Project w onto its label-1 and label-2 positions."""
    if len(labels) != len(w):
        raise ValueError("labelling length must equal |w|")
    if any(lab not in (1, 2) for lab in labels):
        raise ValueError("labels must be 1 or 2")
    first = bytes(b for b, lab in zip(w.data, labels) if lab == 1)
    second = bytes(b for b, lab in zip(w.data, labels) if lab == 2)
    return Str(w.alphabet, first), Str(w.alphabet, second)


def is_k_shuffle(us: list[Str], w: Str) -> bool:
    """True iff w is an interleaving of all strings in us (k = |us|)."""
    k = len(us)
    if k < 1:
        raise UnsupportedArity("need at least one strand")
    if k > MAX_ARITY:
        raise UnsupportedArity(f"{k} strands requested, at most {MAX_ARITY} supported")
    _require_common_alphabet(*us, w)
    strands = [s.data for s in us]
    if sum(len(s) for s in strands) != len(w):
        return False
    lengths = tuple(len(s) for s in strands)
    frontier = {(0,) * k}
    for c in w.data:
        nxt = set()
        for state in frontier:
            for s in range(k):
                i = state[s]
                if i < lengths[s] and strands[s][i] == c:
                    nxt.add(state[:s] + (i + 1,) + state[s + 1 :])
        if not nxt:
            return False
        frontier = nxt
    return lengths in frontier
