"""Front door for square decisions: is w a shuffle of some u with itself?

Three decision procedures live here, sharing one verdict type:

* `brute_force_square`: enumerate which positions form the first copy,
  with incremental prefix-equality pruning.  Exponential, capped, and
  deliberately independent of the other machinery; it is the oracle the
  test suite measures everything else against.
* automaton search (via `qautomaton.accepts`): complete memoized
  search, may return unknown if the configuration budget runs out.
* `two_sat_square`: exact polynomial decision when every symbol occurs
  at most four times.  A 4-occurrence symbol admits three pairings of
  its positions, one of which self-nests and is discarded outright;
  the remaining binary choice becomes a boolean variable, nesting
  conflicts between candidate edges become width-2 clauses, and the
  whole thing drops into a standard implication-graph solver.

`is_square` dispatches between them, applies the even-count fast
rejection first, and validates every positive witness before returning
it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import twosat
from .core import Matching, Str, extract_halves, validate_matching
from .errors import NotApplicable, TooLarge
from .qautomaton import ACCEPT, DEFAULT_BUDGET, REJECT, accepts, trace_to_matching
from .shuffle import is_shuffle

BRUTE_CAP = 16

YES = "yes"
NO = "no"
UNKNOWN = "unknown"

METHOD_BRUTE = "brute"
METHOD_SEARCH = "search"
METHOD_TWO_SAT = "two-sat"


@dataclass(frozen=True)
class SquareVerdict:
    """Decision plus optional witness (u, matching) and the method used."""

    decision: str
    witness: Optional[tuple[Str, Matching]]
    method: str


def _symbol_counts(w: Str) -> list[int]:
    counts = [0] * w.alphabet.size
    for b in w.data:
        counts[b] += 1
    return counts


def _yes(w: Str, matching: Matching, method: str) -> SquareVerdict:
    """Assemble and sanity-check a positive verdict."""
    u, _labels = extract_halves(w, matching)
    assert is_shuffle(u, u, w)
    assert all(c % 2 == 0 for c in _symbol_counts(w))
    return SquareVerdict(YES, (u, matching), method)


def brute_force_square(w: Str, cap: int = BRUTE_CAP) -> SquareVerdict:
    """Exact decision by exhaustive copy-1 position choice.

    Walks positions left to right, assigning each to copy 1 or copy 2.
    A copy-2 position must extend the second projection consistently
    with the first (same symbol at the same index) and may never make
    copy 2 longer than copy 1, since each pair's smaller endpoint lies
    in copy 1.  First success wins, copy-1 branch first, so the result
    is deterministic.
    """
    n = len(w)
    if n > cap:
        raise TooLarge(f"brute force capped at {cap} symbols, got {n}")
    if n % 2 == 1 or any(c % 2 for c in _symbol_counts(w)):
        # Equal halves force every symbol count to be even; skipping the
        # doomed enumeration does not change the decision.
        return SquareVerdict(NO, None, METHOD_BRUTE)
    data = w.data
    half = n // 2
    first_pos: list[int] = []
    second_pos: list[int] = []
    first_sym: list[int] = []
    second_sym: list[int] = []

    def walk(pos: int) -> bool:
        if pos == n:
            return True
        c = data[pos]
        if len(first_sym) < half:
            first_pos.append(pos)
            first_sym.append(c)
            if walk(pos + 1):
                return True
            first_pos.pop()
            first_sym.pop()
        j = len(second_sym)
        if j < len(first_sym) and first_sym[j] == c:
            second_pos.append(pos)
            second_sym.append(c)
            if walk(pos + 1):
                return True
            second_pos.pop()
            second_sym.pop()
        return False

    if not walk(0):
        return SquareVerdict(NO, None, METHOD_BRUTE)
    matching = Matching.from_pairs(zip(first_pos, second_pos))
    report = validate_matching(w, matching)
    assert report.ok, report
    return _yes(w, matching, METHOD_BRUTE)


def _nested(e: tuple[int, int], f: tuple[int, int]) -> bool:
    a, b = e
    c, d = f
    return (a < c and d < b) or (c < a and b < d)


def two_sat_square(w: Str) -> SquareVerdict:
    """Exact decision when every symbol occurs at most 4 times (and evenly).

    Symbols with two occurrences contribute one forced edge.  For a
    symbol at positions p1 < p2 < p3 < p4, the pairing
    {(p1,p4),(p2,p3)} nests with itself and is discarded; variable
    truth means {(p1,p2),(p3,p4)}, falsity {(p1,p3),(p2,p4)}.  Every
    nesting between candidate edges of independent choices yields a
    clause forbidding that combination.
    """
    positions: dict[int, list[int]] = {}
    for pos, b in enumerate(w.data):
        positions.setdefault(b, []).append(pos)
    for occ in positions.values():
        if len(occ) % 2 or len(occ) > 4:
            raise NotApplicable(
                f"two-sat construction needs even symbol counts at most 4, got {len(occ)}"
            )
    if len(w) == 0:
        return SquareVerdict(YES, (Str.empty(w.alphabet), Matching(())), METHOD_TWO_SAT)

    forced: list[tuple[int, int]] = []
    var_choices: list[tuple[list[tuple[int, int]], list[tuple[int, int]]]] = []
    for b in sorted(positions):
        occ = positions[b]
        if len(occ) == 2:
            forced.append((occ[0], occ[1]))
        else:
            p1, p2, p3, p4 = occ
            var_choices.append(
                ([(p1, p2), (p3, p4)], [(p1, p3), (p2, p4)])
            )

    for i, e in enumerate(forced):
        for f in forced[i + 1 :]:
            if _nested(e, f):
                return SquareVerdict(NO, None, METHOD_TWO_SAT)

    clauses: list[tuple[int, int]] = []
    nvars = len(var_choices)
    for v, (true_edges, false_edges) in enumerate(var_choices):
        for choice, edges in ((True, true_edges), (False, false_edges)):
            veto = 2 * v + (1 if choice else 0)  # literal asserting NOT choice
            if any(_nested(e, f) for e in edges for f in forced):
                clauses.append((veto, veto))
        for u in range(v + 1, nvars):
            u_true, u_false = var_choices[u]
            for v_choice, v_edges in ((True, true_edges), (False, false_edges)):
                for u_choice, u_edges in ((True, u_true), (False, u_false)):
                    if any(_nested(e, f) for e in v_edges for f in u_edges):
                        v_veto = 2 * v + (1 if v_choice else 0)
                        u_veto = 2 * u + (1 if u_choice else 0)
                        clauses.append((v_veto, u_veto))

    model = twosat.solve(nvars, clauses)
    if model is None:
        return SquareVerdict(NO, None, METHOD_TWO_SAT)
    edges = list(forced)
    for v, choice in enumerate(model):
        edges.extend(var_choices[v][0] if choice else var_choices[v][1])
    matching = Matching.from_pairs(edges)
    report = validate_matching(w, matching)
    assert report.ok, report
    return _yes(w, matching, METHOD_TWO_SAT)


def is_square(
    w: Str,
    method: str = "auto",
    budget: int = DEFAULT_BUDGET,
    brute_cap: int = BRUTE_CAP,
) -> SquareVerdict:
    """Decide whether w is a square shuffle.

    method "auto" resolves to two-sat when every symbol occurs at most
    4 times, otherwise to the automaton search; "brute", "search" and
    "two-sat" force the respective procedure.  Odd length or an odd
    symbol count short-circuits to a NO tagged with the method that
    would have run.  The search can return UNKNOWN when its
    configuration budget is exhausted; the other methods are exact.
    """
    counts = _symbol_counts(w)
    if method == "auto":
        resolved = METHOD_TWO_SAT if max(counts, default=0) <= 4 else METHOD_SEARCH
    elif method in (METHOD_BRUTE, METHOD_SEARCH, METHOD_TWO_SAT):
        resolved = method
    else:
        raise ValueError(f"unknown method {method!r}")

    if len(w) % 2 == 1 or any(c % 2 for c in counts):
        return SquareVerdict(NO, None, resolved)

    if resolved == METHOD_BRUTE:
        return brute_force_square(w, cap=brute_cap)
    if resolved == METHOD_TWO_SAT:
        return two_sat_square(w)
    outcome = accepts(w, budget=budget)
    if outcome.decision == ACCEPT:
        return _yes(w, trace_to_matching(w, outcome.trace), METHOD_SEARCH)
    if outcome.decision == REJECT:
        assert outcome.complete
        return SquareVerdict(NO, None, METHOD_SEARCH)
    return SquareVerdict(UNKNOWN, None, METHOD_SEARCH)
