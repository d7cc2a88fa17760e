"""The Amir-Nor greedy matcher and the brute-force oracle.

Both are exhaustive: ``amir_nor_match`` enumerates one length per distinct
pattern symbol, ``oracle_match`` enumerates every cut of the text into
``|p|`` non-empty pieces.  They serve as baselines and ground truth for the
suffix-tree heuristic in :mod:`gfmatch.matcher`.
"""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .core import Deadline, MatchPartition, SymbolString, as_symbols, verify
from .errors import InvalidSpec, TooLarge

WHOLE = "whole"
SUBSTRING = "substring"
DEFAULT_ORACLE_CAP = 10**7


def _check_mode(mode: str) -> None:
    if mode not in (WHOLE, SUBSTRING):
        raise InvalidSpec(f"unknown mode {mode!r}")


def compositions(total: int, parts: int, offset: int = 0) -> Iterator[tuple[int, ...]]:
    """Boundary tuples cutting ``[offset, offset+total)`` into non-empty parts."""
    if parts < 1 or total < parts:
        return
    for cuts in combinations(range(offset + 1, offset + total), parts - 1):
        yield (offset, *cuts, offset + total)


def length_vectors(weights: Sequence[int], budget: int, exact: bool) -> Iterator[list[int]]:
    """Vectors ``v >= 1`` with ``sum(w*v) == budget`` (or ``<=`` when not exact).

    Yielded in lexicographic (odometer) order.  The exact variant only walks
    the simplex slice, never an over-long vector.
    """
    k = len(weights)
    # minimum weight still needed by the coordinates after i
    tail = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        tail[i] = tail[i + 1] + weights[i]
    vec = [0] * k

    def rec(i: int, left: int):
        w = weights[i]
        if i == k - 1:
            if exact:
                if left >= w and left % w == 0:
                    vec[i] = left // w
                    yield vec
                return
            for v in range(1, left // w + 1):
                vec[i] = v
                yield vec
            return
        for v in range(1, (left - tail[i + 1]) // w + 1):
            vec[i] = v
            yield from rec(i + 1, left - v * w)

    if k and budget >= tail[0]:
        yield from rec(0, budget)


def amir_nor_match(
    p: SymbolString | Sequence[int],
    t: SymbolString | Sequence[int],
    mode: str = WHOLE,
    deadline: float | Deadline | None = None,
) -> list[MatchPartition]:
    """Greedy search over per-symbol length vectors.

    For each start (only 0 in whole-text mode) and each length vector, the
    pattern is scanned left to right: a symbol's slice is recorded on first
    sight and compared on every later sight, stopping at the first mismatch.
    """
    _check_mode(mode)
    pat, txt = as_symbols(p), as_symbols(t)
    m, n = len(pat), len(txt)
    clock = deadline if isinstance(deadline, Deadline) else Deadline(deadline)
    found: list[MatchPartition] = []
    if m > n:
        return found
    order = list(dict.fromkeys(pat))
    slot = {c: i for i, c in enumerate(order)}
    seq = [slot[c] for c in pat]
    weights = [pat.count(c) for c in order]
    k = len(order)
    starts = range(1) if mode == WHOLE else range(n - m + 1)
    for i in starts:
        available = n - i
        for lengths in length_vectors(weights, available, exact=mode == WHOLE):
            clock.check(found)
            first = [-1] * k
            last = i
            bounds = [i]
            for c in seq:
                ln = lengths[c]
                if first[c] < 0:
                    first[c] = last
                elif txt[last:last + ln] != txt[first[c]:first[c] + ln]:
                    break
                last += ln
                bounds.append(last)
            else:
                found.append(MatchPartition(i, tuple(bounds)))
    found.sort()
    return found


def _whole_oracle(pat, txt, offset: int, length: int, cap: int) -> list[MatchPartition]:
    m = len(pat)
    if m > length:
        return []
    if comb(length - 1, m - 1) > cap:
        raise TooLarge(f"C({length - 1},{m - 1}) compositions exceed cap {cap}")
    return [
        mp for mp in map(MatchPartition.from_boundaries, compositions(length, m, offset))
        if verify(pat, txt, mp)
    ]


def oracle_match(
    p: SymbolString | Sequence[int],
    t: SymbolString | Sequence[int],
    mode: str = WHOLE,
    cap: int = DEFAULT_ORACLE_CAP,
    via: str = "windows",
) -> list[MatchPartition]:
    """Every valid partition, by brute force over all cut positions.

    Substring mode either scans every window ``t[i:j]`` (``via="windows"``)
    or solves the flanked whole-text instance (``via="reduction"``).
    """
    _check_mode(mode)
    pat, txt = as_symbols(p), as_symbols(t)
    n = len(txt)
    if mode == WHOLE:
        return _whole_oracle(pat, txt, 0, n, cap)
    if via == "reduction":
        from .matcher import reduce_to_whole_text

        red = reduce_to_whole_text(pat, txt)
        return sorted(red.restore(mp) for mp in _whole_oracle(red.pattern.symbols, red.text.symbols, 0, n + 2, cap))
    if via != "windows":
        raise InvalidSpec(f"unknown oracle route {via!r}")
    out = []
    for i in range(n):
        for j in range(i + len(pat), n + 1):
            out.extend(_whole_oracle(pat, txt, i, j - i, cap))
    out.sort()
    return out
