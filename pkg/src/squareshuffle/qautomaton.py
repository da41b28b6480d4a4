"""The square-recognition queue automaton: step relation, search, traces.

The machine reads its input left to right.  On each symbol it either
*pushes* the symbol onto the tail of a FIFO queue or *matches* it
against the queue front, popping it (legal only when front and input
symbol agree).  It accepts when the input is exhausted and the queue is
empty.  Accepting computations are in bijection with the ways of
writing the input as a shuffle of a string with itself: pushed
positions form the first copy, matched positions the second, and the
FIFO discipline is exactly the non-nesting condition on the induced
position matching.

Nondeterminism is resolved by explicit search.  Configurations are
memoized on (input cursor, queue contents): nothing else influences
the future, and the cursor strictly increases, so the configuration
graph is a DAG.  A budget caps the number of distinct configurations
inserted into the visited set, making "ran out of budget" an honest
third outcome distinct from Reject.

Acceptance is decided *backward*.  Level p collects every queue that
the remaining input data[p:] can drain to acceptance — the
co-reachable configurations — built from level p+1 by undoing one
step: chopping the queue tail undoes a Push of data[p], prepending
data[p] to the queue front undoes a Match.  The input is accepted
exactly when the empty queue survives at level 0.  States are filtered
by necessary conditions for *forward* reachability (below); a filtered
state cannot occur on any run from the start configuration, so
dropping it never changes the outcome.  On Accept, the trace is
extracted by walking forward through the stored levels preferring
Match; that yields the same canonical trace a depth-first search
trying Match before Push would return, because either search takes
Match at a configuration exactly when some accepting continuation
starts with Match.  Reject means the sweep closed every level without
the budget intervening, so it is always an exhaustive verdict.

The two search directions use mirror-image feasibility conditions,
each necessary for a state to lie on an accepting run:

* reachability of (p, q): the consumed prefix must split into pushes
  π·q and matches π for some string π.  Relaxations: per symbol, the
  prefix holds at least the queue's count and the surplus is even; q
  embeds in the prefix as a subsequence (rightmost embedding
  h_1 < … < h_k), and since every complement push precedes h_1, cell
  j can sit no earlier than position (p−k)/2 + (j−1).
* acceptance from (p, q): the remaining suffix must split into pushes
  t and matches q·t for some string t.  Relaxations (used by the
  forward enumeration search): per symbol, the suffix holds at least
  the queue's count and the surplus is even; q embeds in the suffix
  (leftmost embedding i_1 < … < i_k), and since every complement
  position before i_j is a future push, cell j can sit no later than
  position pos + (n−pos−k)/2 + (j−1).

Both embedding tests are maintained incrementally: a live state
carries a certificate of one embedding of its queue, extended in O(1)
when the queue grows by one cell and recomputed from scratch only
when the certificate goes stale or the quick extension fails its
position bound.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Union

from .core import Matching, Str
from .errors import IllegalStep, InvalidTrace, NoInput, ParseError

PUSH = "P"
MATCH = "M"

ACCEPT = "accept"
REJECT = "reject"
BUDGET_EXCEEDED = "budget-exceeded"

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class Step:
    """One automaton move: op is PUSH or MATCH, symbol the consumed token."""

    op: str
    symbol: str

    def __post_init__(self) -> None:
        if self.op not in (PUSH, MATCH):
            raise ValueError(f"unknown op {self.op!r}")


@dataclass(frozen=True)
class Config:
    """A machine snapshot: queue contents and a cursor into the input."""

    input: Str
    cursor: int
    queue: Str

    def __post_init__(self) -> None:
        if not 0 <= self.cursor <= len(self.input):
            raise ValueError("cursor out of range")

    @property
    def remaining(self) -> Str:
        return self.input[self.cursor :]

    def is_accepting(self) -> bool:
        return self.cursor == len(self.input) and len(self.queue) == 0


def initial_config(w: Str) -> Config:
    return Config(w, 0, Str.empty(w.alphabet))


def step(c: Config, action: Union[str, Step]) -> Config:
    """Apply one Push/Match move to configuration c.

    `action` is PUSH/MATCH or a full Step; a Step's recorded symbol
    must agree with the input symbol being consumed.
    """
    if c.cursor >= len(c.input):
        raise NoInput("no input left to consume")
    sym = c.input[c.cursor]
    op = action.op if isinstance(action, Step) else action
    if op not in (PUSH, MATCH):
        raise ValueError(f"unknown op {op!r}")
    if isinstance(action, Step) and action.symbol != sym:
        raise IllegalStep(f"step records {action.symbol!r} but input symbol is {sym!r}")
    if op == PUSH:
        queue = Str(c.input.alphabet, c.queue.data + c.input.data[c.cursor : c.cursor + 1])
    else:
        if len(c.queue) == 0:
            raise IllegalStep("cannot match with an empty queue")
        if c.queue.data[0] != c.input.data[c.cursor]:
            raise IllegalStep(
                f"queue front {c.queue[0]!r} does not equal input symbol {sym!r}"
            )
        queue = Str(c.input.alphabet, c.queue.data[1:])
    return Config(c.input, c.cursor + 1, queue)


@dataclass(frozen=True)
class Trace:
    """A sequence of Push/Match steps, one per consumed input symbol."""

    steps: tuple[Step, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def replay(self, w: Str) -> Config:
        """Run the steps from ε∥w; raises IllegalStep/NoInput on a bad move."""
        c = initial_config(w)
        for s in self.steps:
            c = step(c, s)
        return c

    def is_accepting(self, w: Str) -> bool:
        try:
            return self.replay(w).is_accepting()
        except (IllegalStep, NoInput):
            return False

    def to_text(self) -> str:
        return "".join(f"{s.op} {s.symbol}\n" for s in self.steps)

    @classmethod
    def from_text(cls, text: str) -> "Trace":
        steps = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2 or parts[0] not in (PUSH, MATCH):
                raise ParseError(f"bad trace line {raw!r}", line=lineno)
            steps.append(Step(parts[0], parts[1]))
        return cls(tuple(steps))


@dataclass(frozen=True)
class SearchOutcome:
    """Result of accepts(): decision plus bookkeeping.

    decision is ACCEPT, REJECT, or BUDGET_EXCEEDED; trace is present
    exactly on ACCEPT; visited counts distinct configurations inserted
    into the visited set; complete is True iff the search closed its
    entire feasible state space, which holds for every ACCEPT and
    REJECT and never for BUDGET_EXCEEDED.
    """

    decision: str
    trace: Optional[Trace]
    visited: int
    complete: bool


@dataclass(frozen=True)
class EnumerationResult:
    """All accepting matchings found, with a completeness flag.

    complete=True means the search closed the entire feasible
    configuration graph, so `matchings` is exactly the set of matchings
    arising from accepting computations.  Otherwise the budget ran out
    and `matchings` is a sound partial set.
    """

    matchings: frozenset[Matching]
    complete: bool
    expansions: int


# ---------------------------------------------------------------------------
# Shared search plumbing
# ---------------------------------------------------------------------------


def _suffix_tables(data: bytes, nsym: int) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Per-position symbol counts and next-occurrence indices of data.

    suffix[p][s] = occurrences of s in data[p:]
    nxt[p][s]    = least q >= p with data[q] == s, or len(data)
    """
    n = len(data)
    counts = [0] * nsym
    suffix: list[tuple[int, ...]] = [()] * (n + 1)
    suffix[n] = tuple(counts)
    nxt: list[tuple[int, ...]] = [()] * (n + 1)
    occ = [n] * nsym
    nxt[n] = tuple(occ)
    for p in range(n - 1, -1, -1):
        counts[data[p]] += 1
        suffix[p] = tuple(counts)
        occ[data[p]] = p
        nxt[p] = tuple(occ)
    return suffix, nxt


def _prefix_tables(data: bytes, nsym: int) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Per-position symbol counts and previous-occurrence indices of data.

    prefix[p][s] = occurrences of s in data[:p]
    prv[p][s]    = greatest q <= p with data[q] == s, or -1
    """
    n = len(data)
    counts = [0] * nsym
    prefix: list[tuple[int, ...]] = [()] * (n + 1)
    prefix[0] = tuple(counts)
    prv: list[tuple[int, ...]] = [()] * n
    occ = [-1] * nsym
    for p in range(n):
        occ[data[p]] = p
        prv[p] = tuple(occ)
        counts[data[p]] += 1
        prefix[p + 1] = tuple(counts)
    return prefix, prv


def _embed(q: bytes, pos: int, nxt: list[tuple[int, ...]], n: int) -> Optional[tuple[int, int]]:
    """Leftmost embedding of q into data[pos:]; (first, end) or None.

    `end` is one past the last matched position; an empty queue embeds
    trivially with the sentinel certificate (n, pos).  Cell j (1-based)
    of k is additionally required to sit no later than position
    pos + (n-pos-k)/2 + (j-1): every non-embedded position before it
    must be a future push, and there are only (n-pos-k)/2 of those.
    """
    k = len(q)
    if not k:
        return (n, pos)
    slack = n - pos - k
    i = pos
    first = -1
    j = 0
    for ch in q:
        i = nxt[i][ch]
        if i >= n:
            return None
        j += 1
        if (i - pos + 1 - j) * 2 > slack:
            return None
        if first < 0:
            first = i
        i += 1
    return (first, i)


def _rembed(q: bytes, p: int, prv: list[tuple[int, ...]]) -> Optional[tuple[int, int]]:
    """Rightmost embedding of q into data[:p]; (last, start) or None.

    `start` is the first matched position; an empty queue embeds
    trivially with the sentinel certificate (-1, p).  Cell j (1-based)
    of k is additionally required to sit no earlier than position
    (p-k)/2 + (j-1): every complement push precedes the first cell,
    and all (p-k)/2 of them precede cell j's position.
    """
    k = len(q)
    if not k:
        return (-1, p)
    base = p - k
    i = p - 1
    last = -1
    j = k
    for ch in reversed(q):
        if i < 0:
            return None
        i = prv[i][ch]
        if i < 0:
            return None
        if (i - j + 1) * 2 < base:
            return None
        if last < 0:
            last = i
        j -= 1
        i -= 1
    return (last, i + 1)


def _root_feasible(suffix0: tuple[int, ...]) -> bool:
    return all(c % 2 == 0 for c in suffix0)


# ---------------------------------------------------------------------------
# Acceptance search
# ---------------------------------------------------------------------------


def accepts(w: Str, budget: int = DEFAULT_BUDGET) -> SearchOutcome:
    """Search for an accepting computation of w.

    Runs the backward co-reachability sweep described in the module
    docstring, memoized on (cursor, queue).  Returns ACCEPT with the
    canonical match-greedy accepting trace, REJECT only after the
    sweep closed every level (an exhaustive verdict), or
    BUDGET_EXCEEDED once `budget` distinct configurations have been
    inserted into the visited set.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    data = w.data
    n = len(data)
    symbols = w.alphabet.symbols
    if n == 0:
        return SearchOutcome(ACCEPT, Trace(()), 0, True)
    nsym = w.alphabet.size
    prefix, prv = _prefix_tables(data, nsym)
    if not _root_feasible(prefix[n]):
        return SearchOutcome(REJECT, None, 1, True)

    inserted = 1  # the accepting seed ε at level n
    level: dict[bytes, tuple[int, int]] = {b"": (-1, n)}
    levels: list[Optional[dict[bytes, tuple[int, int]]]] = [None] * (n + 1)
    levels[n] = level

    for p in range(n - 1, -1, -1):
        c = data[p]
        cb = data[p : p + 1]
        pc = prefix[p]
        nxt_level: dict[bytes, tuple[int, int]] = {}
        for q1, (last, start) in level.items():
            # Undo a Push of data[p]: chop the queue tail.  Feasibility
            # is inherited from q1, so no checks are run.
            if q1 and q1[-1] == c:
                q0 = q1[:-1]
                if q0 not in nxt_level:
                    if inserted >= budget:
                        return SearchOutcome(BUDGET_EXCEEDED, None, inserted, False)
                    inserted += 1
                    nxt_level[q0] = (last, start) if q0 else (-1, p)
            # Undo a Match of data[p]: grow the queue front.  New cell
            # needs the one-symbol count check plus a certificate
            # extension (early-head bound checked on the new cell only).
            if pc[c] > q1.count(c):
                q0 = cb + q1
                if q0 not in nxt_level:
                    if last < p:
                        top = start if start < p else p
                        hit = prv[top - 1][c] if top >= 1 else -1
                        if hit >= 0 and hit * 2 >= p - len(q0):
                            cert = (last if q1 else hit, hit)
                        else:
                            cert = _rembed(q0, p, prv)
                    else:
                        cert = _rembed(q0, p, prv)
                    if cert is not None:
                        if inserted >= budget:
                            return SearchOutcome(BUDGET_EXCEEDED, None, inserted, False)
                        inserted += 1
                        nxt_level[q0] = cert
        if not nxt_level:
            return SearchOutcome(REJECT, None, inserted, True)
        level = nxt_level
        levels[p] = level

    if b"" not in level:
        return SearchOutcome(REJECT, None, inserted, True)

    # Forward walk through the stored levels, preferring Match.
    steps = []
    q = b""
    for p in range(n):
        c = data[p]
        tok = symbols[c]
        q_match = q[1:]
        nxt_level = levels[p + 1]
        if q and q[0] == c and q_match in nxt_level:
            steps.append(Step(MATCH, tok))
            q = q_match
        else:
            q = q + data[p : p + 1]
            assert q in nxt_level, "co-reachable forward walk lost its path"
            steps.append(Step(PUSH, tok))
    return SearchOutcome(ACCEPT, Trace(tuple(steps)), inserted, True)


# ---------------------------------------------------------------------------
# Matching enumeration
# ---------------------------------------------------------------------------


def trace_to_matching(w: Str, t: Trace) -> Matching:
    """Pair each Push position with the Match position that pops it.

    Requires t to be an accepting trace for w; the result always passes
    core.validate_matching by construction.
    """
    if len(t.steps) != len(w):
        raise InvalidTrace(f"trace has {len(t.steps)} steps for input of length {len(w)}")
    data = w.data
    symbols = w.alphabet.symbols
    pending: deque[int] = deque()
    pairs = []
    for pos, s in enumerate(t.steps):
        if s.symbol != symbols[data[pos]]:
            raise InvalidTrace(f"step {pos} records {s.symbol!r}, input has {symbols[data[pos]]!r}")
        if s.op == PUSH:
            pending.append(pos)
        else:
            if not pending:
                raise InvalidTrace(f"match at position {pos} with empty queue")
            opened = pending.popleft()
            if data[opened] != data[pos]:
                raise InvalidTrace(f"match at position {pos} against unequal front symbol")
            pairs.append((opened, pos))
    if pending:
        raise InvalidTrace("trace leaves the queue nonempty")
    return Matching.from_pairs(pairs)


def enumerate_matchings(w: Str, budget: int = DEFAULT_BUDGET) -> EnumerationResult:
    """All distinct matchings arising from accepting computations of w.

    Distinct traces can induce the same matching; results are
    deduplicated by matching.  The search runs forward depth-first,
    trying Match before Push; it memoizes *dead* configurations (fully
    explored, no accepting continuation) and re-walks live ones, so
    every accepting trace is visited.  `budget` caps node expansions;
    on exhaustion the partial set is returned with complete=False.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    data = w.data
    n = len(data)
    if n == 0:
        return EnumerationResult(frozenset([Matching(())]), True, 0)
    nsym = w.alphabet.size
    suffix, nxt = _suffix_tables(data, nsym)
    if n % 2 == 1 or not _root_feasible(suffix[0]):
        return EnumerationResult(frozenset(), True, 0)

    dead: set[bytes] = set()
    found: set[Matching] = set()
    complete = True
    expansions = 0

    # Frame: [pos, q, qc, first, end, children, next-child-index, live]
    root = [0, b"", (0,) * nsym, n, 0, None, 0, False]
    frames = [root]
    ops: list[str] = []

    while frames:
        frame = frames[-1]
        pos, q, qc, first, end, children, idx, live = frame
        if children is None:
            expansions += 1
            if expansions > budget:
                complete = False
                break
            children = []
            c = data[pos]
            pos1 = pos + 1
            # Match child first: canonical exploration order.
            if q and q[0] == c:
                q_match = q[1:]
                if pos1 == n:
                    if not q_match:
                        ops.append(MATCH)
                        found.add(_ops_to_matching(ops))
                        ops.pop()
                        frame[7] = True
                else:
                    if q_match:
                        cert = (first, end)
                    else:
                        cert = (n, pos1)
                    counts = list(qc)
                    counts[c] -= 1
                    children.append((MATCH, pos1, q_match, tuple(counts), cert[0], cert[1]))
            if suffix[pos1][c] > qc[c]:
                q_push = q + data[pos:pos1]
                k1 = len(q_push)
                if first > pos:
                    base = end if end > pos else pos1
                    hit = nxt[base][c]
                    if hit < n and (hit - pos1 + 1 - k1) * 2 <= n - pos1 - k1:
                        cert = (first if q else hit, hit + 1)
                    else:
                        cert = _embed(q_push, pos1, nxt, n)
                else:
                    cert = _embed(q_push, pos1, nxt, n)
                if cert is not None:
                    counts = list(qc)
                    counts[c] += 1
                    children.append((PUSH, pos1, q_push, tuple(counts), cert[0], cert[1]))
            frame[5] = children
            idx = 0
        advanced = False
        while idx < len(children):
            op, cpos, cq, cqc, cfirst, cend = children[idx]
            frame[6] = idx + 1
            key = cpos.to_bytes(2, "big") + cq
            if key in dead:
                idx += 1
                continue
            ops.append(op)
            frames.append([cpos, cq, cqc, cfirst, cend, None, 0, False])
            advanced = True
            break
        if advanced:
            continue
        # frame exhausted
        frames.pop()
        if not frame[7]:
            dead.add(frame[0].to_bytes(2, "big") + frame[1])
        if frames:
            if frame[7]:
                frames[-1][7] = True
            ops.pop()

    return EnumerationResult(frozenset(found), complete, expansions)


def _ops_to_matching(ops: list[str]) -> Matching:
    pending: deque[int] = deque()
    pairs = []
    for pos, op in enumerate(ops):
        if op == PUSH:
            pending.append(pos)
        else:
            pairs.append((pending.popleft(), pos))
    return Matching.from_pairs(pairs)


# ---------------------------------------------------------------------------
# Segment consumption
# ---------------------------------------------------------------------------


def consume(u2: Str, x2: Str) -> frozenset[Str]:
    """All resultants of consuming input segment x2 by queue content u2.

    A resultant z2 arises from a computation that starts with exactly
    u2 queued, consumes all of x2, matches every cell of u2, and
    matches nothing else; the final queue is then z2, and
    x2 = u2 ⊙ z2.  The empty set means u2 cannot be fully matched,
    e.g. when it is not a subsequence of x2.
    """
    if u2.alphabet != x2.alphabet:
        raise ValueError("consume requires a common alphabet")
    data = x2.data
    need = u2.data
    n = len(data)
    k = len(need)
    results: set[bytes] = set()
    seen = {(0, 0, b"")}
    stack = [(0, 0, b"")]
    while stack:
        pos, pops, pushed = stack.pop()
        if pos == n:
            if pops == k:
                results.add(pushed)
            continue
        c = data[pos]
        if pops < k and need[pops] == c:
            st = (pos + 1, pops + 1, pushed)
            if st not in seen:
                seen.add(st)
                stack.append(st)
        st = (pos + 1, pops, pushed + data[pos : pos + 1])
        if st not in seen:
            seen.add(st)
            stack.append(st)
    return frozenset(Str(x2.alphabet, d) for d in results)
