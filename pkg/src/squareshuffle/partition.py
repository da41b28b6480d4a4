"""Exact 3-Partition solving for desk-scale instances.

The decision problem is strongly NP-complete, so this is an honest
exponential backtracking search with a hard size cap.  It exists as an
oracle for the reduction tests, not as a solver contribution.

Search order is canonical for determinism: the anchor of each new
triple is the smallest unused index (the largest remaining value,
since instances are sorted non-increasing), and its two partners are
chosen in lexicographic index order.  Anchoring kills the m!·(3!)^m
symmetry between and inside triples, and the sorted values make the
sum prune bite early.
"""

from __future__ import annotations

from typing import Optional

from .errors import TooLarge
from .reduction import PartitionInstance, PartitionSolution

MAX_VALUES = 24


def check(inst: PartitionInstance, sol: PartitionSolution) -> bool:
    """True iff sol's triples partition all indices and each sums to target."""
    used = [idx for triple in sol.groups for idx in triple]
    if len(sol.groups) != inst.group_count:
        return False
    if sorted(used) != list(range(3 * inst.group_count)):
        return False
    return all(
        sum(inst.values[idx] for idx in triple) == inst.target for triple in sol.groups
    )


def solve(inst: PartitionInstance) -> Optional[PartitionSolution]:
    """A canonical solution, or None when no triple grouping reaches target.

    Exact for any instance with at most MAX_VALUES values; larger
    instances raise TooLarge instead of silently running forever.
    """
    count = 3 * inst.group_count
    if count > MAX_VALUES:
        raise TooLarge(f"backtracking solver capped at {MAX_VALUES} values, got {count}")
    values = inst.values
    target = inst.target
    free = [True] * count
    triples: list[tuple[int, int, int]] = []

    def fill() -> bool:
        anchor = next((i for i in range(count) if free[i]), None)
        if anchor is None:
            return True
        free[anchor] = False
        need = target - values[anchor]
        for j in range(anchor + 1, count):
            # Skip later copies of an equal, still-free value: picking
            # them instead of the first copy gives an isomorphic branch.
            if not free[j] or values[j] > need:
                continue
            if j > anchor + 1 and free[j - 1] and values[j - 1] == values[j]:
                continue
            free[j] = False
            rest = need - values[j]
            for k in range(j + 1, count):
                if not free[k] or values[k] != rest:
                    continue
                if k > j + 1 and free[k - 1] and values[k - 1] == values[k]:
                    continue
                free[k] = False
                triples.append((anchor, j, k))
                if fill():
                    return True
                triples.pop()
                free[k] = True
            free[j] = True
        free[anchor] = True
        return False

    if fill():
        return PartitionSolution(tuple(triples))
    return None
