"""3-Partition → square-shuffle reduction: builders and witness synthesis.

Given a 3-Partition instance (3m nonnegative values that should split
into m triples, each summing to the common target), `build_reduction`
emits a string over a fixed 9-symbol alphabet that is a square shuffle
exactly when the instance is solvable.  The string has three parts:

* loader: e0 (b^{2B} e)^m.  A square split must push the whole loader,
  so the queue starts as the loader itself.
* distributor: e0 ((a1 b^B a2)^3 e)^m.  Consuming it against the
  loader's b-runs forces the queue into the shape
  (a1 b^{i_1} a2)(a1 b^{i_2} a2)…(a1 b^{i_3m} a2) where each
  consecutive value triple sums to B: the machine has nondeterminically
  "guessed" a candidate partition.
* verifier: for each round k (one per value, largest first) a block
  v D_k v v' D_k v' v'' E_k v'' v''' F_k v''' where the markers
  v = c1 x^ℓ y^ℓ c2 fence off the phases, D_k checks every queued
  value is at most the round's value n_k (two passes that each
  complement values against n_k, so together they restore the queue),
  E_k cancels one block holding exactly n_k, and F_k restores the
  remaining blocks.  After all rounds the queue is empty iff the
  guessed values were a valid partition with the right multiset.

`synthesize_witness` runs this script forward for a known solution and
records the push/match sequence, yielding an accepting computation
that doubles as a square witness for the emitted string.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import Alphabet, Str
from .errors import InvalidSolution, MalformedInstance
from .qautomaton import (
    ACCEPT,
    BUDGET_EXCEEDED,
    DEFAULT_BUDGET,
    MATCH,
    PUSH,
    REJECT,
    SearchOutcome,
    Step,
    Trace,
    accepts,
)

REDUCTION_SYMBOLS = ("a1", "a2", "b", "e0", "e", "c1", "c2", "x", "y")
REDUCTION_ALPHABET = Alphabet(REDUCTION_SYMBOLS)

_IDX = {s: i for i, s in enumerate(REDUCTION_SYMBOLS)}


class BoundWarning(UserWarning):
    """An instance violates the customary target/4 < value < target/2 bound."""


@dataclass(frozen=True)
class PartitionInstance:
    """A normalized 3-Partition instance.

    values are sorted non-increasing; group_count is the number of
    triples to form; target is the required sum of each triple;
    bounded records whether every value lies strictly between
    target/4 and target/2 (informational only, never assumed).
    """

    values: tuple[int, ...]
    group_count: int
    target: int
    bounded: bool


@dataclass(frozen=True)
class PartitionSolution:
    """A grouping of value indices (0-based) into triples."""

    groups: tuple[tuple[int, int, int], ...]


@dataclass(frozen=True)
class Span:
    """A named half-open position range [start, end) of the built string."""

    name: str
    start: int
    end: int


@dataclass(frozen=True)
class ReductionOutput:
    """The reduction string together with a tiling of named spans."""

    w: Str
    spans: tuple[Span, ...]

    def span(self, name: str) -> Span:
        for s in self.spans:
            if s.name == name:
                return s
        raise KeyError(name)


@dataclass(frozen=True)
class RoundGadgets:
    """The three verifier gadget strings of one round."""

    bound_check: Str
    removal: Str
    restore: Str


@dataclass(frozen=True)
class Assignment:
    """Per-slot queue values ⟨i_k⟩; consecutive triples sum to target."""

    values: tuple[int, ...]
    target: int

    def __post_init__(self) -> None:
        if len(self.values) % 3:
            raise ValueError("assignment length must be a multiple of 3")
        if any(v < 0 for v in self.values):
            raise ValueError("assignment values must be nonnegative")
        for j in range(0, len(self.values), 3):
            triple = self.values[j : j + 3]
            if sum(triple) != self.target:
                raise ValueError(f"triple {triple} does not sum to {self.target}")


# ---------------------------------------------------------------------------
# Instance handling
# ---------------------------------------------------------------------------


def normalize(values: Iterable[int], strict: bool = False) -> PartitionInstance:
    """Sort values non-increasing, derive group count and target sum.

    Raises MalformedInstance when the list is empty, its length is not
    a multiple of 3, any value is negative, or the total is not
    divisible by the group count.  The customary bound
    target/4 < value < target/2 is only recorded (and warned about, or
    rejected with strict=True): none of the construction relies on it.
    """
    vals = tuple(int(v) for v in values)
    if not vals:
        raise MalformedInstance("instance has no values")
    if len(vals) % 3:
        raise MalformedInstance(f"need a multiple of 3 values, got {len(vals)}")
    if any(v < 0 for v in vals):
        raise MalformedInstance("values must be nonnegative")
    group_count = len(vals) // 3
    total = sum(vals)
    if total % group_count:
        raise MalformedInstance(
            f"total {total} is not divisible by group count {group_count}"
        )
    target = total // group_count
    sorted_vals = tuple(sorted(vals, reverse=True))
    bounded = all(4 * v > target and 2 * v < target for v in sorted_vals)
    if not bounded:
        if strict:
            raise MalformedInstance(
                f"values must lie strictly between {target}/4 and {target}/2"
            )
        warnings.warn(
            f"values outside ({target}/4, {target}/2); proceeding anyway",
            BoundWarning,
            stacklevel=2,
        )
    return PartitionInstance(sorted_vals, group_count, target, bounded)


def parse_instance(text: str) -> PartitionInstance:
    """Parse either whitespace-separated values or JSON {"values": [...]}.

    The group count and target are always derived from the values.
    """
    import json

    stripped = text.strip()
    if not stripped:
        raise MalformedInstance("empty instance input")
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise MalformedInstance(f"instance JSON does not parse: {exc}") from None
        if not isinstance(obj, dict) or "values" not in obj:
            raise MalformedInstance('instance JSON must be an object with a "values" array')
        raw = obj["values"]
        if not isinstance(raw, list) or not all(isinstance(v, int) for v in raw):
            raise MalformedInstance('"values" must be an array of integers')
        return normalize(raw)
    try:
        vals = [int(tok) for tok in stripped.split()]
    except ValueError as exc:
        raise MalformedInstance(f"bad value in instance text: {exc}") from None
    return normalize(vals)


# ---------------------------------------------------------------------------
# Gadget builders
# ---------------------------------------------------------------------------


def _raw(*parts: Sequence[int]) -> bytes:
    out = bytearray()
    for part in parts:
        out.extend(part)
    return bytes(out)


def _run(symbol: str, count: int) -> bytes:
    return bytes([_IDX[symbol]]) * count


def marker(level: int) -> Str:
    """The fence string c1 x^level y^level c2."""
    if level < 1:
        raise ValueError("marker level must be at least 1")
    data = _raw(_run("c1", 1), _run("x", level), _run("y", level), _run("c2", 1))
    return Str(REDUCTION_ALPHABET, data)


def fenced_block(length: int) -> Str:
    """The guarded run a1 a1 b^length a2 a2."""
    if length < 0:
        raise ValueError("block length must be nonnegative")
    data = _raw(_run("a1", 2), _run("b", length), _run("a2", 2))
    return Str(REDUCTION_ALPHABET, data)


def _check_round(inst: PartitionInstance, k: int) -> None:
    if not 1 <= k <= 3 * inst.group_count:
        raise ValueError(f"round {k} out of range 1..{3 * inst.group_count}")


def bound_check_gadget(inst: PartitionInstance, k: int) -> Str:
    """Round k's value-bound checker: fenced_block(n_k)^(3m-k+1)."""
    _check_round(inst, k)
    reps = 3 * inst.group_count - k + 1
    return Str(REDUCTION_ALPHABET, fenced_block(inst.values[k - 1]).data * reps)


def removal_gadget(inst: PartitionInstance, k: int) -> Str:
    """Round k's max-removal string: U^g (a1 b^{n_k} a2) U^g with U = fenced_block(target)."""
    _check_round(inst, k)
    g = 3 * inst.group_count - k
    guard = fenced_block(inst.target).data * g
    middle = _raw(_run("a1", 1), _run("b", inst.values[k - 1]), _run("a2", 1))
    return Str(REDUCTION_ALPHABET, guard + middle + guard)


def restore_gadget(inst: PartitionInstance, k: int) -> Str:
    """Round k's restorer: fenced_block(target)^(2(3m-k))."""
    _check_round(inst, k)
    g = 3 * inst.group_count - k
    return Str(REDUCTION_ALPHABET, fenced_block(inst.target).data * (2 * g))


def build_gadgets(inst: PartitionInstance, k: int) -> RoundGadgets:
    """All three verifier gadgets for round k."""
    return RoundGadgets(
        bound_check=bound_check_gadget(inst, k),
        removal=removal_gadget(inst, k),
        restore=restore_gadget(inst, k),
    )


def build_v_gadget(levels: int) -> Str:
    """The standalone marker tower: (marker(ℓ))² (marker(ℓ-1))² … (marker(1))²."""
    if levels < 1:
        raise ValueError("need at least one level")
    data = bytearray()
    for j in range(levels, 0, -1):
        data.extend(marker(j).data * 2)
    return Str(REDUCTION_ALPHABET, bytes(data))


def loader_part(inst: PartitionInstance) -> Str:
    """e0 (b^{2·target} e)^group_count."""
    data = bytearray(_run("e0", 1))
    block = _run("b", 2 * inst.target) + _run("e", 1)
    data.extend(block * inst.group_count)
    return Str(REDUCTION_ALPHABET, bytes(data))


def distributor_part(inst: PartitionInstance) -> Str:
    """e0 ((a1 b^target a2)³ e)^group_count."""
    data = bytearray(_run("e0", 1))
    sub = _raw(_run("a1", 1), _run("b", inst.target), _run("a2", 1))
    block = sub * 3 + _run("e", 1)
    data.extend(block * inst.group_count)
    return Str(REDUCTION_ALPHABET, bytes(data))


def build_reduction(inst: PartitionInstance) -> ReductionOutput:
    """Assemble loader · distributor · verifier with named spans.

    Span names: "load", "dist", then per round k the twelve pieces
    "round{k}.marker{ℓ}.first/.second" (ℓ the marker level) and
    "round{k}.bound.first", "round{k}.bound.second", "round{k}.removal",
    "round{k}.restore".  Spans tile the string in order; zero-length
    spans (empty gadgets in the last round) are kept for uniformity.
    """
    pieces: list[tuple[str, bytes]] = []
    pieces.append(("load", loader_part(inst).data))
    pieces.append(("dist", distributor_part(inst).data))
    for k in range(1, 3 * inst.group_count + 1):
        gadgets = build_gadgets(inst, k)
        base = 4 * k - 3
        layout = (
            (marker(base), f"round{k}.marker{base}"),
            (gadgets.bound_check, f"round{k}.bound.first"),
            (marker(base), f"round{k}.marker{base}"),
            (marker(base + 1), f"round{k}.marker{base + 1}"),
            (gadgets.bound_check, f"round{k}.bound.second"),
            (marker(base + 1), f"round{k}.marker{base + 1}"),
            (marker(base + 2), f"round{k}.marker{base + 2}"),
            (gadgets.removal, f"round{k}.removal"),
            (marker(base + 2), f"round{k}.marker{base + 2}"),
            (marker(base + 3), f"round{k}.marker{base + 3}"),
            (gadgets.restore, f"round{k}.restore"),
            (marker(base + 3), f"round{k}.marker{base + 3}"),
        )
        seen_marker: dict[str, int] = {}
        for piece, name in layout:
            if name.endswith(("removal", "restore")) or ".bound." in name:
                pieces.append((name, piece.data))
            else:
                nth = seen_marker.get(name, 0)
                seen_marker[name] = nth + 1
                suffix = "first" if nth == 0 else "second"
                pieces.append((f"{name}.{suffix}", piece.data))
    spans = []
    data = bytearray()
    for name, chunk in pieces:
        spans.append(Span(name, len(data), len(data) + len(chunk)))
        data.extend(chunk)
    return ReductionOutput(Str(REDUCTION_ALPHABET, bytes(data)), tuple(spans))


# ---------------------------------------------------------------------------
# Witness synthesis
# ---------------------------------------------------------------------------


def assignment_from_solution(inst: PartitionInstance, sol: PartitionSolution) -> Assignment:
    """Queue values in solution order: group j supplies slots 3j..3j+2."""
    flat = tuple(inst.values[idx] for triple in sol.groups for idx in triple)
    return Assignment(flat, inst.target)


class _Script:
    """Accumulates push/match steps over the reduction alphabet."""

    def __init__(self) -> None:
        self.steps: list[Step] = []

    def push(self, symbol: str, count: int = 1) -> None:
        self.steps.extend([Step(PUSH, symbol)] * count)

    def match(self, symbol: str, count: int = 1) -> None:
        self.steps.extend([Step(MATCH, symbol)] * count)

    def push_marker(self, level: int) -> None:
        self.push("c1")
        self.push("x", level)
        self.push("y", level)
        self.push("c2")

    def match_marker(self, level: int) -> None:
        self.match("c1")
        self.match("x", level)
        self.match("y", level)
        self.match("c2")


def synthesize_witness(inst: PartitionInstance, sol: PartitionSolution) -> Trace:
    """An accepting computation of build_reduction(inst).w from a solution.

    The script follows the construction's intended run: push the whole
    loader; split each loader b-run according to the solution while
    consuming the distributor (leaving queue blocks a1 b^{i} a2); then
    per round push the fence marker, stream the queue blocks through
    the bound checker twice, cancel the first block holding the round
    maximum inside the removal gadget, and restore the rest.  Matches
    always precede pushes within a b-run, which makes the trace the
    canonical one the depth-first search finds first.
    """
    from .partition import check

    if not check(inst, sol):
        raise InvalidSolution(f"solution {sol.groups} does not solve the instance")
    t = _Script()
    total = 3 * inst.group_count
    target = inst.target

    # Loader: everything is pushed.
    t.push("e0")
    for _ in range(inst.group_count):
        t.push("b", 2 * target)
        t.push("e")

    # Distributor: realize the assignment.
    assign = assignment_from_solution(inst, sol)
    t.match("e0")
    for j in range(inst.group_count):
        for s in range(3):
            keep = assign.values[3 * j + s]
            t.push("a1")
            t.match("b", target - keep)
            t.push("b", keep)
            t.push("a2")
        t.match("e")

    # Verifier rounds, largest value first.
    blocks = list(assign.values)
    for k in range(1, total + 1):
        top = inst.values[k - 1]
        assert top == max(blocks), "instance values must be sorted non-increasing"
        # Bound check, two complementing passes.
        for level in (4 * k - 3, 4 * k - 2):
            t.push_marker(level)
            for held in blocks:
                t.match("a1")
                t.push("a1")
                t.match("b", held)
                t.push("b", top - held)
                t.match("a2")
                t.push("a2")
            blocks = [top - held for held in blocks]
            t.match_marker(level)
        # Removal of the first block holding the maximum.
        victim = blocks.index(top)
        guards = len(blocks) - 1
        t.push_marker(4 * k - 1)
        for held in blocks[:victim]:
            t.match("a1")
            t.push("a1")
            t.match("b", held)
            t.push("b", target - held)
            t.match("a2")
            t.push("a2")
        for _ in range(guards - victim):
            t.push("a1", 2)
            t.push("b", target)
            t.push("a2", 2)
        t.match("a1")
        t.match("b", top)
        t.match("a2")
        for _ in range(victim):
            t.push("a1", 2)
            t.push("b", target)
            t.push("a2", 2)
        for held in blocks[victim + 1 :]:
            t.match("a1")
            t.push("a1")
            t.match("b", held)
            t.push("b", target - held)
            t.match("a2")
            t.push("a2")
        t.match_marker(4 * k - 1)
        # Restore: complement the survivors back, cancel the guards.
        t.push_marker(4 * k)
        for held in blocks[:victim]:
            t.match("a1")
            t.push("a1")
            t.match("b", target - held)
            t.push("b", held)
            t.match("a2")
            t.push("a2")
        for _ in range(guards):
            t.match("a1", 2)
            t.match("b", target)
            t.match("a2", 2)
        for held in blocks[victim + 1 :]:
            t.match("a1")
            t.push("a1")
            t.match("b", target - held)
            t.push("b", held)
            t.match("a2")
            t.push("a2")
        t.match_marker(4 * k)
        blocks = blocks[:victim] + blocks[victim + 1 :]

    assert not blocks
    return Trace(tuple(t.steps))


# ---------------------------------------------------------------------------
# End-to-end harness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionReport:
    """Consistency report tying solver, synthesis, and search together.

    agreement is one of:
      confirmed-yes         solver found a solution and the search
                            independently accepted;
      confirmed-by-witness  solver found a solution, the synthesized
                            trace replays to acceptance, but the search
                            ran out of budget;
      confirmed-no          solver found nothing and the search
                            exhaustively rejected;
      consistent-with-no    solver found nothing, search was budgeted;
      mismatch              anything contradictory (never expected).
    """

    instance: PartitionInstance
    string_length: int
    solvable: bool
    witness_valid: Optional[bool]
    search: SearchOutcome
    agreement: str


def verify_reduction_instance(
    inst: PartitionInstance, budget: int = DEFAULT_BUDGET
) -> ReductionReport:
    """Cross-check the reduction on one instance, within a search budget."""
    from .partition import solve

    built = build_reduction(inst)
    sol = solve(inst)
    witness_valid: Optional[bool] = None
    if sol is not None:
        trace = synthesize_witness(inst, sol)
        witness_valid = trace.is_accepting(built.w)
    outcome = accepts(built.w, budget=budget)

    if sol is not None:
        if outcome.decision == ACCEPT and witness_valid:
            agreement = "confirmed-yes"
        elif witness_valid and outcome.decision == BUDGET_EXCEEDED:
            agreement = "confirmed-by-witness"
        else:
            agreement = "mismatch"
    else:
        if outcome.decision == REJECT:
            agreement = "confirmed-no"
        elif outcome.decision == BUDGET_EXCEEDED:
            agreement = "consistent-with-no"
        else:
            agreement = "mismatch"
    return ReductionReport(
        instance=inst,
        string_length=len(built.w),
        solvable=sol is not None,
        witness_valid=witness_valid,
        search=outcome,
        agreement=agreement,
    )
