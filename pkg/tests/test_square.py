"""Square decisions: brute force, implication-graph reduction, and dispatch."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from squareshuffle.core import Matching, Str, validate_matching
from squareshuffle.errors import NotApplicable, TooLarge
from squareshuffle.qautomaton import DEFAULT_BUDGET
from squareshuffle.shuffle import is_shuffle
from squareshuffle.square import (
    BRUTE_CAP,
    METHOD_BRUTE,
    METHOD_SEARCH,
    METHOD_TWO_SAT,
    NO,
    UNKNOWN,
    YES,
    SquareVerdict,
    brute_force_square,
    is_square,
    two_sat_square,
)
from squareshuffle.encoding import parse_strings

from conftest import AB, ABC, SHOWCASE_TEXT, all_texts


def s(text: str) -> Str:
    return Str.from_text(AB, text)


def check_yes_witness(w: Str, verdict: SquareVerdict) -> None:
    assert verdict.decision == YES
    assert verdict.witness is not None
    u, matching = verdict.witness
    assert validate_matching(w, matching).ok
    assert is_shuffle(u, u, w)
    assert len(u) * 2 == len(w)


# ---------------------------------------------------------------------------
# brute_force_square
# ---------------------------------------------------------------------------


class TestBruteForce:
    def test_simple_yes(self):
        verdict = brute_force_square(s("aabb"))
        assert verdict.method == METHOD_BRUTE
        check_yes_witness(s("aabb"), verdict)
        u, matching = verdict.witness
        assert u == s("ab")
        assert matching == Matching.from_pairs([(0, 1), (2, 3)])

    def test_simple_no(self):
        verdict = brute_force_square(s("abba"))
        assert verdict.decision == NO
        assert verdict.witness is None

    def test_odd_length_no(self):
        assert brute_force_square(s("aab")).decision == NO

    def test_odd_count_no(self):
        assert brute_force_square(s("aabbab")).decision == NO

    def test_empty_yes(self):
        verdict = brute_force_square(Str.empty(AB))
        check_yes_witness(Str.empty(AB), verdict)

    def test_deterministic_first_witness(self):
        # Copy-1 branch first: positions 0 and 1 form the first copy.
        verdict = brute_force_square(s("aaaa"))
        _, matching = verdict.witness
        assert matching == Matching.from_pairs([(0, 2), (1, 3)])

    def test_cap_enforced(self):
        big = s("ab" * 9)
        with pytest.raises(TooLarge):
            brute_force_square(big)
        assert BRUTE_CAP == 16

    def test_custom_cap(self):
        w = s("ababababa" * 2)  # 18 symbols, a square by construction
        verdict = brute_force_square(w, cap=18)
        check_yes_witness(w, verdict)


# ---------------------------------------------------------------------------
# two_sat_square
# ---------------------------------------------------------------------------


class TestTwoSat:
    def test_simple_yes(self):
        verdict = two_sat_square(s("aabb"))
        assert verdict.method == METHOD_TWO_SAT
        check_yes_witness(s("aabb"), verdict)

    def test_crossing_yes(self):
        check_yes_witness(s("abab"), two_sat_square(s("abab")))

    def test_forced_nesting_no(self):
        assert two_sat_square(s("abba")).decision == NO

    def test_four_occurrence_variable(self):
        check_yes_witness(s("aaaa"), two_sat_square(s("aaaa")))

    def test_empty_yes(self):
        verdict = two_sat_square(Str.empty(AB))
        assert verdict.decision == YES
        assert verdict.witness[0] == Str.empty(AB)

    def test_six_occurrences_not_applicable(self):
        with pytest.raises(NotApplicable):
            two_sat_square(s("aaaaaa"))

    def test_odd_count_not_applicable(self):
        with pytest.raises(NotApplicable):
            two_sat_square(s("aaa"))

    def test_exhaustive_agreement_with_brute(self):
        # Every string over {a, b} up to length 8 (counts are then <= 8;
        # skip the ones the reduction does not cover).
        for text in all_texts("ab", 8):
            w = s(text)
            counts = (text.count("a"), text.count("b"))
            if max(counts) > 4 or any(c % 2 for c in counts):
                continue
            expected = brute_force_square(w).decision
            got = two_sat_square(w)
            assert got.decision == expected, text
            if got.decision == YES:
                check_yes_witness(w, got)

    @settings(max_examples=200, deadline=None)
    @given(st.text(alphabet="abc", max_size=14))
    def test_random_agreement_with_brute(self, text):
        w = Str.from_text(ABC, text)
        counts = [text.count(ch) for ch in "abc"]
        if len(text) % 2 or any(c % 2 for c in counts):
            return
        if max(counts) > 4:
            return
        assert two_sat_square(w).decision == brute_force_square(w).decision


# ---------------------------------------------------------------------------
# is_square dispatch
# ---------------------------------------------------------------------------


class TestIsSquare:
    def test_auto_small_counts_uses_two_sat(self):
        verdict = is_square(s("aabb"))
        assert verdict.method == METHOD_TWO_SAT
        check_yes_witness(s("aabb"), verdict)

    def test_auto_large_counts_uses_search(self):
        verdict = is_square(s("aaaaaa"))
        assert verdict.method == METHOD_SEARCH
        check_yes_witness(s("aaaaaa"), verdict)

    def test_forced_brute(self):
        assert is_square(s("aabb"), method="brute").method == METHOD_BRUTE

    def test_forced_search(self):
        verdict = is_square(s("abba"), method="search")
        assert verdict.method == METHOD_SEARCH
        assert verdict.decision == NO

    def test_unknown_method_rejected(self):
        with pytest.raises(ValueError):
            is_square(s("aabb"), method="oracle")

    def test_odd_length_fast_no(self):
        verdict = is_square(s("aba"))
        assert verdict.decision == NO
        assert verdict.method == METHOD_TWO_SAT  # what auto would have run

    def test_odd_count_fast_no_with_search_tag(self):
        w = s("a" * 5 + "b" * 5)
        verdict = is_square(w)
        assert verdict.decision == NO
        assert verdict.method == METHOD_SEARCH

    def test_budget_exhaustion_is_unknown(self):
        (w,) = parse_strings([SHOWCASE_TEXT])
        verdict = is_square(w, method="search", budget=5)
        assert verdict.decision == UNKNOWN
        assert verdict.witness is None

    def test_showcase_is_square(self):
        (w,) = parse_strings([SHOWCASE_TEXT])
        verdict = is_square(w)
        assert verdict.method == METHOD_SEARCH  # x occurs 12 times
        check_yes_witness(w, verdict)

    def test_default_budget_used(self):
        assert DEFAULT_BUDGET == 10_000_000

    @settings(max_examples=150, deadline=None)
    @given(st.text(alphabet="abc", max_size=12))
    def test_all_methods_agree(self, text):
        w = Str.from_text(ABC, text)
        auto = is_square(w)
        brute = is_square(w, method="brute")
        search = is_square(w, method="search")
        assert auto.decision == brute.decision == search.decision
        for verdict in (auto, brute, search):
            if verdict.decision == YES:
                check_yes_witness(w, verdict)

    @settings(max_examples=100, deadline=None)
    @given(st.text(alphabet="ab", max_size=7))
    def test_squares_by_construction_accepted(self, u_text):
        u = s(u_text)
        verdict = is_square(u + u)
        assert verdict.decision == YES
