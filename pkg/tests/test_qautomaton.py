"""Queue automaton semantics, the acceptance search, and matching enumeration."""

from __future__ import annotations

from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from squareshuffle.core import Matching, Str, extract_halves, validate_matching
from squareshuffle.errors import IllegalStep, InvalidTrace, NoInput, ParseError
from squareshuffle.qautomaton import (
    ACCEPT,
    BUDGET_EXCEEDED,
    DEFAULT_BUDGET,
    MATCH,
    PUSH,
    REJECT,
    Config,
    Step,
    Trace,
    accepts,
    consume,
    enumerate_matchings,
    initial_config,
    step,
    trace_to_matching,
)
from squareshuffle.shuffle import is_shuffle
from squareshuffle.encoding import parse_strings

from conftest import AB, ABC, SHOWCASE_MATCHING, SHOWCASE_TEXT, SHOWCASE_HALF_STRAIGHT, all_texts


def s(text: str) -> Str:
    return Str.from_text(AB, text)


def showcase():
    (w,) = parse_strings([SHOWCASE_TEXT])
    return w


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------


def match_first_trace(w: Str):
    """Reference memoized depth-first search that tries Match before Push.

    Returns the first accepting step sequence in that order, or None.
    """
    n = len(w)
    data = w.data

    @lru_cache(maxsize=None)
    def go(pos: int, q: bytes):
        if pos == n:
            return () if not q else None
        cb = data[pos : pos + 1]
        if q and q[:1] == cb:
            rest = go(pos + 1, q[1:])
            if rest is not None:
                return ((MATCH, data[pos]),) + rest
        rest = go(pos + 1, q + cb)
        if rest is not None:
            return ((PUSH, data[pos]),) + rest
        return None

    found = go(0, b"")
    if found is None:
        return None
    symbols = w.alphabet.symbols
    return Trace(tuple(Step(op, symbols[c]) for op, c in found))


def all_noncrossing_matchings(w: Str) -> frozenset[Matching]:
    """Brute force: every perfect pairing of positions, filtered by the validator."""
    n = len(w)
    if n % 2:
        return frozenset()

    out: set[Matching] = set()

    def pair_up(free: tuple[int, ...], acc: list[tuple[int, int]]):
        if not free:
            m = Matching.from_pairs(acc)
            if validate_matching(w, m).ok:
                out.add(m)
            return
        first, rest = free[0], free[1:]
        for i, partner in enumerate(rest):
            acc.append((first, partner))
            pair_up(rest[:i] + rest[i + 1 :], acc)
            acc.pop()

    pair_up(tuple(range(n)), [])
    return frozenset(out)


# ---------------------------------------------------------------------------
# Step / Config / step()
# ---------------------------------------------------------------------------


class TestStepAndConfig:
    def test_bad_op_rejected(self):
        with pytest.raises(ValueError):
            Step("X", "a")

    def test_cursor_range_checked(self):
        with pytest.raises(ValueError):
            Config(s("ab"), 3, Str.empty(AB))

    def test_initial_config(self):
        c = initial_config(s("ab"))
        assert c.cursor == 0
        assert len(c.queue) == 0
        assert c.remaining == s("ab")
        assert not c.is_accepting()

    def test_push_appends_to_queue(self):
        c = step(initial_config(s("ab")), PUSH)
        assert c.cursor == 1
        assert c.queue == s("a")

    def test_match_pops_front(self):
        c = initial_config(s("aa"))
        c = step(c, PUSH)
        c = step(c, MATCH)
        assert c.is_accepting()

    def test_fifo_order(self):
        # Queue is first-in first-out: after pushing a then b, only a matches.
        c = initial_config(s("abab"))
        c = step(c, PUSH)
        c = step(c, PUSH)
        with pytest.raises(IllegalStep):
            step(Config(c.input, c.cursor, s("ba")), MATCH)
        c = step(c, MATCH)  # front is a, input symbol is a
        assert c.queue == s("b")

    def test_match_empty_queue_rejected(self):
        with pytest.raises(IllegalStep):
            step(initial_config(s("a")), MATCH)

    def test_match_wrong_front_rejected(self):
        c = step(initial_config(s("ab")), PUSH)
        with pytest.raises(IllegalStep):
            step(c, MATCH)

    def test_no_input_left(self):
        c = step(initial_config(s("a")), PUSH)
        with pytest.raises(NoInput):
            step(c, PUSH)

    def test_step_symbol_must_agree(self):
        with pytest.raises(IllegalStep):
            step(initial_config(s("ab")), Step(PUSH, "b"))


# ---------------------------------------------------------------------------
# Trace
# ---------------------------------------------------------------------------


class TestTrace:
    def test_text_round_trip(self):
        t = Trace((Step(PUSH, "a"), Step(MATCH, "a")))
        assert t.to_text() == "P a\nM a\n"
        assert Trace.from_text(t.to_text()) == t

    def test_from_text_skips_blank_lines(self):
        assert len(Trace.from_text("P a\n\nM a\n")) == 2

    def test_from_text_bad_line(self):
        with pytest.raises(ParseError) as info:
            Trace.from_text("P a\nQ b\n")
        assert info.value.line == 2

    def test_replay_and_accept(self):
        t = Trace.from_text("P a\nM a\nP b\nM b\n")
        assert t.is_accepting(s("aabb"))
        assert not t.is_accepting(s("abab"))  # match of b against front b fails mid-way
        assert not t.is_accepting(s("aabbaa"))  # too short, queue empty but input remains

    def test_replay_illegal_raises(self):
        t = Trace.from_text("M a\n")
        with pytest.raises(IllegalStep):
            t.replay(s("a"))
        assert not t.is_accepting(s("a"))


# ---------------------------------------------------------------------------
# accepts()
# ---------------------------------------------------------------------------


class TestAccepts:
    def test_empty_string_accepts(self):
        out = accepts(Str.empty(AB))
        assert out.decision == ACCEPT
        assert out.trace == Trace(())
        assert out.complete

    def test_simple_square(self):
        out = accepts(s("aabb"))
        assert out.decision == ACCEPT
        assert out.trace.to_text() == "P a\nM a\nP b\nM b\n"
        assert out.complete
        assert out.trace.is_accepting(s("aabb"))

    def test_crossing_square(self):
        out = accepts(s("abab"))
        assert out.decision == ACCEPT
        assert out.trace.to_text() == "P a\nP b\nM a\nM b\n"

    def test_reject_is_exhaustive(self):
        out = accepts(s("abba"))
        assert out.decision == REJECT
        assert out.trace is None
        assert out.complete

    def test_odd_counts_fast_reject(self):
        out = accepts(s("ab"))
        assert out.decision == REJECT
        assert out.complete

    def test_budget_must_be_positive(self):
        with pytest.raises(ValueError):
            accepts(s("aabb"), budget=0)

    def test_budget_exceeded(self):
        out = accepts(showcase(), budget=10)
        assert out.decision == BUDGET_EXCEEDED
        assert out.trace is None
        assert not out.complete
        assert out.visited == 10

    def test_showcase_accepts_and_canonical_half(self):
        out = accepts(showcase())
        assert out.decision == ACCEPT
        assert out.complete
        assert 0 < out.visited < 200
        m = trace_to_matching(showcase(), out.trace)
        u, _ = extract_halves(showcase(), m)
        assert u.tokens() == SHOWCASE_HALF_STRAIGHT

    def test_default_budget_value(self):
        assert DEFAULT_BUDGET == 10_000_000

    @settings(max_examples=200, deadline=None)
    @given(st.text(alphabet="ab", max_size=12))
    def test_matches_match_first_reference(self, text):
        w = s(text)
        expected = match_first_trace(w)
        out = accepts(w)
        if expected is None:
            assert out.decision == REJECT
            assert out.complete
        else:
            assert out.decision == ACCEPT
            assert out.trace == expected

    @settings(max_examples=100, deadline=None)
    @given(st.text(alphabet="abc", max_size=6))
    def test_square_strings_always_accept(self, u_text):
        u = Str.from_text(ABC, u_text)
        w = u + u  # one particular interleaving of u with itself
        out = accepts(w)
        assert out.decision == ACCEPT
        half, _ = extract_halves(w, trace_to_matching(w, out.trace))
        assert is_shuffle(half, half, w)


# ---------------------------------------------------------------------------
# trace_to_matching
# ---------------------------------------------------------------------------


class TestTraceToMatching:
    def test_adjacent(self):
        m = trace_to_matching(s("aabb"), Trace.from_text("P a\nM a\nP b\nM b\n"))
        assert m.pairs == ((0, 1), (2, 3))

    def test_crossing(self):
        m = trace_to_matching(s("abab"), Trace.from_text("P a\nP b\nM a\nM b\n"))
        assert m.pairs == ((0, 2), (1, 3))

    def test_length_mismatch(self):
        with pytest.raises(InvalidTrace):
            trace_to_matching(s("aabb"), Trace.from_text("P a\n"))

    def test_symbol_mismatch(self):
        with pytest.raises(InvalidTrace):
            trace_to_matching(s("aa"), Trace.from_text("P b\nM b\n"))

    def test_match_on_empty_queue(self):
        with pytest.raises(InvalidTrace):
            trace_to_matching(s("aa"), Trace.from_text("M a\nP a\n"))

    def test_leftover_queue(self):
        with pytest.raises(InvalidTrace):
            trace_to_matching(s("aa"), Trace.from_text("P a\nP a\n"))

    @settings(max_examples=100, deadline=None)
    @given(st.text(alphabet="ab", max_size=12))
    def test_matching_always_validates(self, text):
        w = s(text)
        out = accepts(w)
        if out.decision == ACCEPT:
            m = trace_to_matching(w, out.trace)
            assert validate_matching(w, m).ok


# ---------------------------------------------------------------------------
# enumerate_matchings
# ---------------------------------------------------------------------------


class TestEnumerateMatchings:
    def test_unique_matching(self):
        res = enumerate_matchings(s("aabb"))
        assert res.complete
        assert res.matchings == {Matching.from_pairs([(0, 1), (2, 3)])}

    def test_two_matchings(self):
        res = enumerate_matchings(s("aaaa"))
        assert res.complete
        assert res.matchings == {
            Matching.from_pairs([(0, 1), (2, 3)]),
            Matching.from_pairs([(0, 2), (1, 3)]),
        }

    def test_rejecting_string_empty(self):
        res = enumerate_matchings(s("abba"))
        assert res.complete
        assert res.matchings == frozenset()

    def test_empty_string(self):
        res = enumerate_matchings(Str.empty(AB))
        assert res.complete
        assert res.matchings == {Matching(())}

    def test_showcase_enumeration(self):
        res = enumerate_matchings(showcase())
        assert res.complete
        assert len(res.matchings) == 16
        assert SHOWCASE_MATCHING in res.matchings
        for m in res.matchings:
            assert validate_matching(showcase(), m).ok

    def test_budget_gives_sound_partial_set(self):
        full = enumerate_matchings(showcase())
        partial = enumerate_matchings(showcase(), budget=20)
        assert not partial.complete
        assert partial.matchings <= full.matchings

    def test_exhaustive_small_strings(self):
        # Every even-length string over {a, b} up to length 8, against the
        # pair-everything-and-filter oracle.
        for text in all_texts("ab", 8):
            if len(text) % 2:
                continue
            w = s(text)
            res = enumerate_matchings(w)
            assert res.complete
            assert res.matchings == all_noncrossing_matchings(w), text

    @settings(max_examples=60, deadline=None)
    @given(st.text(alphabet="abc", min_size=1, max_size=10))
    def test_agrees_with_accepts(self, text):
        w = Str.from_text(ABC, text)
        res = enumerate_matchings(w)
        out = accepts(w)
        assert res.complete and out.complete
        assert (out.decision == ACCEPT) == bool(res.matchings)
        if out.decision == ACCEPT:
            assert trace_to_matching(w, out.trace) in res.matchings


# ---------------------------------------------------------------------------
# consume()
# ---------------------------------------------------------------------------


class TestConsume:
    def test_basic(self):
        assert consume(s("ab"), s("aabb")) == {s("ab")}

    def test_no_embedding(self):
        assert consume(s("ba"), s("aabb")) == frozenset()

    def test_trivial_ends(self):
        assert consume(Str.empty(AB), s("ab")) == {s("ab")}
        assert consume(s("ab"), s("ab")) == {Str.empty(AB)}

    def test_multiple_resultants(self):
        # Deleting one a from aba leaves ba or ab.
        assert consume(s("a"), s("aba")) == {s("ba"), s("ab")}

    def test_alphabet_mismatch(self):
        with pytest.raises(ValueError):
            consume(s("a"), Str.from_text(ABC, "a"))

    @settings(max_examples=80, deadline=None)
    @given(st.text(alphabet="ab", max_size=4), st.text(alphabet="ab", max_size=8))
    def test_equals_shuffle_complement(self, u_text, x_text):
        # z is a resultant of consuming u against x exactly when x is an
        # interleaving of u and z.
        u, x = s(u_text), s(x_text)
        got = consume(u, x)
        k = len(x) - len(u)
        if k < 0:
            assert got == frozenset()
            return
        expected = {
            s(z) for z in all_texts("ab", k, min_len=k) if is_shuffle(u, s(z), x)
        }
        assert got == frozenset(expected)
