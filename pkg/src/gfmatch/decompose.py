"""Divide-and-conquer matching for patterns that split into disjoint alphabets."""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Sequence

from .baseline import SUBSTRING, WHOLE
from .core import MatchPartition, SymbolString, as_symbols, verify
from .errors import TimedOut
from .matcher import MatcherConfig, match, reduce_to_whole_text

LEFT_TO_RIGHT = "left_to_right"
INWARD = "inward"


@dataclass(frozen=True)
class DecompositionPlan:
    """``left_to_right``: ``pieces = (q1, ..., qk)`` with pairwise disjoint alphabets.
    ``inward``: ``pieces = (q, inner, r)`` where ``inner`` shares no symbol with ``q`` or ``r``.
    """

    kind: str
    pieces: tuple[tuple[int, ...], ...]


def _first_last(pat):
    first, last = {}, {}
    for i, c in enumerate(pat):
        first.setdefault(c, i)
        last[c] = i
    return first, last


def split_points(p: SymbolString | Sequence[int]) -> list[int]:
    """Cut positions ``k`` (0 < k < m) where no symbol of ``p[:k]`` recurs in ``p[k:]``."""
    pat = as_symbols(p)
    _, last = _first_last(pat)
    cuts, reach = [], -1
    for k in range(len(pat) - 1):
        reach = max(reach, last[pat[k]])
        if reach == k:
            cuts.append(k + 1)
    return cuts


def _inward_split(pat) -> tuple[int, int] | None:
    first, last = _first_last(pat)
    m = len(pat)
    best = None
    for i in range(1, m - 1):
        reach, x, ok = i, i, True
        while x <= reach:
            c = pat[x]
            if first[c] < i:
                ok = False
                break
            reach = max(reach, last[c])
            x += 1
        if not ok or reach >= m - 1:
            continue
        if best is None or reach + 1 - i < best[1] - best[0]:
            best = (i, reach + 1)
    return best


def plan_decomposition(p: SymbolString | Sequence[int]) -> DecompositionPlan | None:
    pat = as_symbols(p)
    cuts = split_points(pat)
    if cuts:
        bounds = [0, *cuts, len(pat)]
        return DecompositionPlan(
            LEFT_TO_RIGHT, tuple(pat[a:b] for a, b in zip(bounds, bounds[1:]))
        )
    inner = _inward_split(pat)
    if inner is None:
        return None
    i, j = inner
    return DecompositionPlan(INWARD, (pat[:i], pat[i:j], pat[j:]))


class _Solver:
    def __init__(self, txt, cfg: MatcherConfig, fresh: int):
        self.txt = txt
        self.cfg = replace(cfg, mode=WHOLE)
        self.fresh = fresh
        self.stop = None if cfg.deadline is None else time.monotonic() + cfg.deadline
        self.cache: dict = {}

    def _cfg(self) -> MatcherConfig:
        if self.stop is None:
            return self.cfg
        left = self.stop - time.monotonic()
        if left <= 0:
            raise TimedOut()
        return replace(self.cfg, deadline=left)

    def whole(self, piece, lo: int, hi: int) -> list[tuple[int, ...]]:
        """Absolute boundaries of whole-text matches of ``piece`` on ``txt[lo:hi]``."""
        key = (piece, lo, hi)
        if key not in self.cache:
            found = match(piece, self.txt[lo:hi], self._cfg())
            self.cache[key] = [tuple(x + lo for x in mp.boundaries) for mp in found]
        return self.cache[key]

    def open_right(self, piece, lo: int, hi: int) -> list[tuple[int, ...]]:
        """Matches of ``piece *``: the piece's boundaries, the last one starting the wildcard."""
        return [b[:-1] for b in self.whole(piece + (self.fresh,), lo, hi)]

    def left_to_right(self, pieces, lo: int, hi: int) -> list[tuple[int, ...]]:
        key = ("ltr", len(pieces), lo)
        if key in self.cache:
            return self.cache[key]
        if len(pieces) == 1:
            out = self.whole(pieces[0], lo, hi)
        else:
            out = []
            for head in self.open_right(pieces[0], lo, hi):
                for tail in self.left_to_right(pieces[1:], head[-1], hi):
                    out.append(head[:-1] + tail)
        self.cache[key] = out
        return out

    def inward(self, q, inner, r, lo: int, hi: int) -> list[tuple[int, ...]]:
        out = []
        outer = q + (self.fresh,) + r
        for b in self.whole(outer, lo, hi):
            mid_lo, mid_hi = b[len(q)], b[len(q) + 1]
            for mid in self.whole(inner, mid_lo, mid_hi):
                out.append(b[:len(q)] + mid + b[len(q) + 2:])
        return out


def match_decomposed(
    p: SymbolString | Sequence[int],
    t: SymbolString | Sequence[int],
    plan: DecompositionPlan | None,
    cfg: MatcherConfig | None = None,
) -> list[MatchPartition]:
    """Match piece by piece, each later piece against what the previous left over.

    ``cfg.max_matches`` caps candidates per sub-problem, which can lose final
    matches; leave it unset for exact agreement with :func:`match`.
    """
    cfg = cfg or MatcherConfig()
    if plan is None or len(plan.pieces) < 2:
        return match(p, t, cfg)
    pat, txt = as_symbols(p), as_symbols(t)
    if len(pat) > len(txt):
        return []
    pieces = list(plan.pieces)
    red = None
    if cfg.mode == SUBSTRING:
        red = reduce_to_whole_text(p, t)
        alpha, beta = red.pattern.symbols[0], red.pattern.symbols[-1]
        pieces[0] = (alpha, *pieces[0])
        pieces[-1] = (*pieces[-1], beta)
        pat, txt = red.pattern.symbols, red.text.symbols
    solver = _Solver(txt, cfg, fresh=max(pat) + 1)
    if plan.kind == LEFT_TO_RIGHT:
        found = solver.left_to_right(tuple(pieces), 0, len(txt))
    else:
        found = solver.inward(*pieces, 0, len(txt))
    results = sorted({MatchPartition(0, b) for b in found if verify(pat, txt, MatchPartition(0, b))})
    if red is not None:
        results = sorted(red.restore(mp) for mp in results)
    if cfg.max_matches is not None:
        results = results[:cfg.max_matches]
    return results
