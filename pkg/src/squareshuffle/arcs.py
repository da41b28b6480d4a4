"""Arc-diagram rendering of matchings: ASCII, Graphviz DOT, and SVG.

Each pair of a matching becomes an arc over the symbol baseline.
Because valid matchings are non-nesting, arcs only ever cross; the
renderers do not assume that, though, so diagnostic pictures of
invalid matchings are possible when callers skip validation.

All three renderers are pure string producers and byte-deterministic.
"""

from __future__ import annotations

from .core import Matching, Str
from .encoding import COMPACT_OF_TOKEN


def _display_chars(w: Str) -> list[str]:
    chars = []
    for token in w.tokens():
        if token in COMPACT_OF_TOKEN:
            chars.append(COMPACT_OF_TOKEN[token])
        elif len(token) == 1:
            chars.append(token)
        else:
            chars.append(token[0])
    return chars


def _levels(pairs: tuple[tuple[int, int], ...]) -> dict[tuple[int, int], int]:
    """Stack crossing arcs on separate rows: smallest free row wins."""
    levels: dict[tuple[int, int], int] = {}
    active: list[tuple[int, int]] = []  # (end, level)
    for pair in sorted(pairs):
        start = pair[0]
        active = [(end, lvl) for end, lvl in active if end > start]
        taken = {lvl for _end, lvl in active}
        level = 0
        while level in taken:
            level += 1
        levels[pair] = level
        active.append((pair[1], level))
    return levels


def render_ascii(w: Str, m: Matching) -> str:
    """Arcs drawn with /-\\ above the compact symbol row.

    Columns are two characters wide for legibility; legs of taller
    arcs drop through lower rows as '|', crossing horizontals as '+'.
    """
    n = len(w)
    chars = _display_chars(w)
    if n == 0:
        return "(empty string)\n"
    levels = _levels(m.pairs)
    height = max(levels.values(), default=-1) + 1
    width = 2 * n - 1
    grid = [[" "] * width for _ in range(height)]
    for (s, e), lvl in levels.items():
        row = grid[lvl]
        row[2 * s] = "/"
        row[2 * e] = "\\"
        for col in range(2 * s + 1, 2 * e):
            row[col] = "-"
        for below in range(lvl):
            for col in (2 * s, 2 * e):
                grid[below][col] = "+" if grid[below][col] == "-" else "|"
    lines = ["".join(row).rstrip() for row in reversed(grid)]
    lines.append(" ".join(chars))
    lines.append(" ".join(str(i % 10) for i in range(n)))
    return "\n".join(lines) + "\n"


def render_dot(w: Str, m: Matching) -> str:
    """Graphviz (undirected) with positions chained invisibly in order."""
    chars = _display_chars(w)
    out = ["graph arcs {", "  rankdir=LR;", '  node [shape=plaintext, fontname="monospace"];']
    for i, ch in enumerate(chars):
        label = ch.replace("\\", "\\\\").replace('"', '\\"')
        out.append(f'  p{i} [label="{label}"];')
    for i in range(len(chars) - 1):
        out.append(f"  p{i} -- p{i + 1} [style=invis, weight=100];")
    for s, e in m.pairs:
        out.append(f"  p{s} -- p{e} [constraint=false];")
    out.append("}")
    return "\n".join(out) + "\n"


def render_svg(w: Str, m: Matching) -> str:
    """Semicircular arcs over a baseline of symbols."""
    n = len(w)
    chars = _display_chars(w)
    step = 22
    margin = 20
    baseline = 40 + (max((e - s for s, e in m.pairs), default=0) * step) // 2
    width = 2 * margin + step * max(n - 1, 0)
    height = baseline + 25
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'  <line x1="{margin - 8}" y1="{baseline}" x2="{width - margin + 8}" '
        f'y2="{baseline}" stroke="#999" stroke-width="1"/>',
    ]
    for s, e in m.pairs:
        x1 = margin + step * s
        x2 = margin + step * e
        r = (x2 - x1) / 2
        out.append(
            f'  <path d="M {x1} {baseline} A {r:.1f} {r:.1f} 0 0 1 {x2} {baseline}" '
            f'fill="none" stroke="#2a6" stroke-width="1.5"/>'
        )
    for i, ch in enumerate(chars):
        x = margin + step * i
        text = ch.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        out.append(
            f'  <text x="{x}" y="{baseline + 16}" text-anchor="middle" '
            f'font-family="monospace" font-size="13">{text}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
