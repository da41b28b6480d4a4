"""Implication-graph 2-SAT solver, checked against exhaustive assignment search."""

from __future__ import annotations

import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from squareshuffle import twosat


def satisfies(model: list[bool], clauses: list[tuple[int, int]]) -> bool:
    def lit_true(lit: int) -> bool:
        value = model[lit // 2]
        return value if lit % 2 == 0 else not value

    return all(lit_true(a) or lit_true(b) for a, b in clauses)


class TestNegate:
    def test_flips_parity(self):
        assert twosat.negate(0) == 1
        assert twosat.negate(1) == 0
        assert twosat.negate(6) == 7

    def test_involution(self):
        for lit in range(10):
            assert twosat.negate(twosat.negate(lit)) == lit


class TestSolve:
    def test_empty_formula(self):
        model = twosat.solve(3, [])
        assert model is not None
        assert len(model) == 3

    def test_unit_positive(self):
        assert twosat.solve(1, [(0, 0)]) == [True]

    def test_unit_negative(self):
        assert twosat.solve(1, [(1, 1)]) == [False]

    def test_contradiction(self):
        assert twosat.solve(1, [(0, 0), (1, 1)]) is None

    def test_implication_chain(self):
        # v0, and v0 implies v1, and v1 implies v2.
        clauses = [(0, 0), (1, 2), (3, 4)]
        assert twosat.solve(3, clauses) == [True, True, True]

    def test_exactly_one_of_two(self):
        clauses = [(0, 2), (1, 3)]
        model = twosat.solve(2, clauses)
        assert model is not None
        assert model[0] != model[1]

    def test_unsat_cycle(self):
        # v0 <=> not v0 via two clauses.
        assert twosat.solve(1, [(0, 0), (1, 1)]) is None
        # (v0 or v1) & (v0 or not v1) & (not v0 or v1) & (not v0 or not v1)
        clauses = [(0, 2), (0, 3), (1, 2), (1, 3)]
        assert twosat.solve(2, clauses) is None

    def test_model_satisfies_clauses(self):
        clauses = [(0, 3), (2, 5), (4, 1)]
        model = twosat.solve(3, clauses)
        assert model is not None
        assert satisfies(model, clauses)

    @settings(max_examples=300, deadline=None)
    @given(st.data())
    def test_against_exhaustive_search(self, data):
        nvars = data.draw(st.integers(1, 6))
        nlits = 2 * nvars
        clauses = data.draw(
            st.lists(
                st.tuples(st.integers(0, nlits - 1), st.integers(0, nlits - 1)),
                max_size=16,
            )
        )
        model = twosat.solve(nvars, clauses)
        brute_sat = any(
            satisfies(list(bits), clauses)
            for bits in itertools.product([False, True], repeat=nvars)
        )
        if model is None:
            assert not brute_sat
        else:
            assert satisfies(model, clauses)
