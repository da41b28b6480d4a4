#!/usr/bin/env python3
"""Enumerate all matchings of the doubled fence tower.

For each level count L the tower doubles every fence marker, widest
first: marker(L) marker(L) ... marker(1) marker(1).  The claim being
exercised: the only accepted matching pairs each marker cell-by-cell
with its immediate duplicate.  This script enumerates the complete
matching set per level and reports the search effort.

Usage:
    python3 scripts/v_uniqueness.py --max-level 3
"""

from __future__ import annotations

import argparse
import time

from squareshuffle.core import Matching
from squareshuffle.qautomaton import enumerate_matchings
from squareshuffle.reduction import build_v_gadget, marker


def cellwise_matching(levels: int) -> Matching:
    pairs = []
    offset = 0
    for level in range(levels, 0, -1):
        width = len(marker(level))
        pairs.extend((offset + i, offset + width + i) for i in range(width))
        offset += 2 * width
    return Matching.from_pairs(pairs)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-level", type=int, default=3)
    parser.add_argument("--budget", type=int, default=10_000_000)
    args = parser.parse_args(argv)

    print(f"{'L':>2} {'|w|':>5} {'matchings':>9} {'complete':>8} "
          f"{'expansions':>10} {'seconds':>8} cellwise-only")
    for levels in range(1, args.max_level + 1):
        tower = build_v_gadget(levels)
        started = time.perf_counter()
        result = enumerate_matchings(tower, budget=args.budget)
        elapsed = time.perf_counter() - started
        unique = result.matchings == {cellwise_matching(levels)}
        print(f"{levels:>2} {len(tower):>5} {len(result.matchings):>9} "
              f"{str(result.complete):>8} {result.expansions:>10} "
              f"{elapsed:>8.3f} {unique}")
        if not unique:
            return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
