"""Arc-diagram rendering of a text's repetitions and of pattern matches.

Gray arcs above the axis join consecutive occurrences of each repetition,
with band width equal to the repeated length.  Matches are mirrored below the
axis in red hues: a span per match plus bands joining pieces of equal
pattern symbols.  Output is plain SVG text with fixed number formatting, so
identical inputs give byte-identical files.
"""

from __future__ import annotations

import colorsys
from typing import Sequence
from xml.sax.saxutils import escape

from .core import MatchPartition, SymbolString, as_symbols
from .errors import GFMError
from .repindex import Repetition, build_suffix_tree, extract_repetitions

MAX_LAYOUT_LEN = 5000


class LayoutTooLarge(GFMError):
    pass


def red_hue(i: int, total: int) -> str:
    """Deterministic red-family colour for the ``i``-th match."""
    frac = i / max(1, total - 1) if total > 1 else 0.0
    hue = (350 + 25 * frac) % 360 / 360.0
    light = 0.38 + 0.2 * ((i * 3) % 5) / 4
    r, g, b = colorsys.hls_to_rgb(hue, light, 0.8)
    return "#{:02x}{:02x}{:02x}".format(round(r * 255), round(g * 255), round(b * 255))


def _f(x: float) -> str:
    return f"{x:.2f}"


class _Canvas:
    def __init__(self, n: int, cell: float, margin: float, height: float):
        self.cell = cell
        self.margin = margin
        self.axis = height / 2
        self.parts: list[str] = []

    def x(self, pos: float) -> float:
        return self.margin + pos * self.cell

    def band(self, a: int, b: int, length: int, above: bool, fill: str, opacity: float, cls: str) -> None:
        """Band from ``[a, a+length)`` to ``[b, b+length)``; a thick stroke when they overlap."""
        y = self.axis
        sweep = 1 if above else 0
        if a + length <= b:
            x1, x2, x3, x4 = self.x(a), self.x(a + length), self.x(b), self.x(b + length)
            ro, ri = (x4 - x1) / 2, (x3 - x2) / 2
            d = (f"M{_f(x1)},{_f(y)} A{_f(ro)},{_f(ro)} 0 0 {sweep} {_f(x4)},{_f(y)} "
                 f"L{_f(x3)},{_f(y)} A{_f(ri)},{_f(ri)} 0 0 {1 - sweep} {_f(x2)},{_f(y)} Z")
            self.parts.append(
                f'<path class="{cls}" d="{d}" fill="{fill}" fill-opacity="{opacity}" stroke="none"/>'
            )
        else:
            xa, xb = self.x(a + length / 2), self.x(b + length / 2)
            r = (xb - xa) / 2
            d = f"M{_f(xa)},{_f(y)} A{_f(r)},{_f(r)} 0 0 {sweep} {_f(xb)},{_f(y)}"
            self.parts.append(
                f'<path class="{cls}" d="{d}" fill="none" stroke="{fill}" '
                f'stroke-opacity="{opacity}" stroke-width="{_f(length * self.cell * 0.5)}"/>'
            )


def arc_diagram_svg(
    t: SymbolString | Sequence[int],
    matches: Sequence[MatchPartition] = (),
    pattern: SymbolString | Sequence[int] | None = None,
    reps: Sequence[Repetition] | None = None,
    markers: Sequence[int] = (),
    width: float = 960.0,
) -> str:
    """Render the diagram; ``reps`` defaults to the pruned repetition list of ``t``."""
    txt = as_symbols(t)
    n = len(txt)
    if n > MAX_LAYOUT_LEN:
        raise LayoutTooLarge(f"text of length {n} exceeds layout budget {MAX_LAYOUT_LEN}")
    if reps is None:
        reps = extract_repetitions(build_suffix_tree(txt), pruned=True)
    margin = 20.0
    cell = (width - 2 * margin) / max(n, 1)
    half = max(60.0, (width - 2 * margin) / 2 + 10)
    height = 2 * half if matches else half + 30
    canvas = _Canvas(n, cell, margin, 2 * half)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(width)}" height="{_f(height)}" '
        f'viewBox="0 0 {_f(width)} {_f(height)}">',
        '<rect width="100%" height="100%" fill="#ffffff"/>',
        '<g id="repetitions">',
    ]
    for rep in reps:
        for a, b in zip(rep.positions, rep.positions[1:]):
            canvas.band(a, b, rep.length, True, "#808080", 0.35, "rep")
    out += canvas.parts
    out.append("</g>")
    canvas.parts = []
    if matches:
        pat = as_symbols(pattern) if pattern is not None else None
        total = len(matches)
        for i, mp in enumerate(sorted(matches)):
            colour = red_hue(i, total)
            canvas.parts.append(
                f'<rect class="match-span" x="{_f(canvas.x(mp.start))}" y="{_f(canvas.axis + 4)}" '
                f'width="{_f((mp.end - mp.start) * cell)}" height="6" fill="{colour}" fill-opacity="0.8"/>'
            )
            if pat is None:
                continue
            b = mp.boundaries
            last_piece: dict = {}
            for j, sym in enumerate(pat):
                if sym in last_piece:
                    prev = last_piece[sym]
                    canvas.band(b[prev], b[j], b[j + 1] - b[j], False, colour, 0.45, "match")
                last_piece[sym] = j
        out.append('<g id="matches">')
        out += canvas.parts
        out.append("</g>")
    y = canvas.axis
    out.append(
        f'<line id="axis" x1="{_f(margin)}" y1="{_f(y)}" x2="{_f(width - margin)}" y2="{_f(y)}" '
        'stroke="#000000" stroke-width="1"/>'
    )
    for pos in markers:
        out.append(
            f'<line class="marker" x1="{_f(canvas.x(pos))}" y1="{_f(y - 8)}" x2="{_f(canvas.x(pos))}" '
            f'y2="{_f(y + 8)}" stroke="#cc0000" stroke-width="2"/>'
        )
    if isinstance(t, SymbolString) and n <= 200:
        size = min(12.0, cell * 0.9)
        out.append(f'<g id="labels" font-family="monospace" font-size="{_f(size)}" text-anchor="middle">')
        for i, tok in enumerate(t.restore()):
            out.append(f'<text x="{_f(canvas.x(i + 0.5))}" y="{_f(y + 22)}">{escape(str(tok))}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
