"""Domain types shared by the matchers.

Patterns and texts are interned into dense integer alphabets; every matcher
reports its results as :class:`MatchPartition` boundary arrays, which
:func:`verify` checks independently of how they were produced.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Sequence

from .errors import EmptyInput, InvalidPartition, TimedOut


@dataclass(frozen=True)
class SymbolString:
    """A sequence of dense symbol ids plus the tokens they stand for.

    ``tokens[i]`` is the original token interned as id ``i``.
    """

    symbols: tuple[int, ...]
    tokens: tuple[Hashable, ...]
    _ids: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self._ids is None:
            object.__setattr__(self, "_ids", {tok: i for i, tok in enumerate(self.tokens)})

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    @property
    def alphabet_size(self) -> int:
        return len(self.tokens)

    def id_of(self, token: Hashable) -> int:
        return self._ids[token]

    def restore(self) -> list:
        return [self.tokens[s] for s in self.symbols]

    def render(self, symbols: Iterable[int] | None = None, sep: str = "") -> str:
        seq = self.symbols if symbols is None else symbols
        return sep.join(str(self.tokens[s]) for s in seq)


def intern(tokens: Iterable[Hashable]) -> SymbolString:
    """Number tokens by order of first appearance."""
    ids: dict = {}
    symbols = tuple(ids.setdefault(tok, len(ids)) for tok in tokens)
    if not symbols:
        raise EmptyInput("cannot intern an empty token sequence")
    return SymbolString(symbols, tuple(ids), ids)


def as_symbols(s: SymbolString | Sequence[int]) -> tuple[int, ...]:
    if isinstance(s, SymbolString):
        return s.symbols
    return tuple(s)


def canonical(s: Sequence[Hashable]) -> tuple[int, ...]:
    """First-appearance renaming; two strings are isomorphic iff these agree."""
    ids: dict = {}
    return tuple(ids.setdefault(c, len(ids)) for c in s)


@dataclass(frozen=True)
class PatternProfile:
    """Split of a pattern into repeating and non-repeating symbols.

    ``rep_subseq`` lists the repeating symbols in pattern order and
    ``rep_positions`` their indices in the pattern.  ``nrep_gaps[j]`` is the
    number of non-repeating symbols before repeating position ``j`` (the
    last entry is the trailing gap), and ``nrep_symbols_per_gap[j]`` lists them.
    """

    pattern: tuple[int, ...]
    rep_subseq: tuple[int, ...]
    rep_positions: tuple[int, ...]
    nrep_gaps: tuple[int, ...]
    nrep_symbols_per_gap: tuple[tuple[int, ...], ...]
    occurrence_count: dict

    @property
    def rep_alphabet(self) -> tuple[int, ...]:
        """Repeating symbols in order of first appearance."""
        return tuple(dict.fromkeys(self.rep_subseq))


def profile_pattern(p: SymbolString | Sequence[int]) -> PatternProfile:
    pat = as_symbols(p)
    counts = Counter(pat)
    rep, rep_pos, gaps = [], [], [[]]
    for i, sym in enumerate(pat):
        if counts[sym] > 1:
            rep.append(sym)
            rep_pos.append(i)
            gaps.append([])
        else:
            gaps[-1].append(sym)
    return PatternProfile(
        pattern=pat,
        rep_subseq=tuple(rep),
        rep_positions=tuple(rep_pos),
        nrep_gaps=tuple(len(g) for g in gaps),
        nrep_symbols_per_gap=tuple(tuple(g) for g in gaps),
        occurrence_count=dict(counts),
    )


@dataclass(frozen=True, order=True)
class MatchPartition:
    """Boundaries ``u[0] < u[1] < ... < u[m]`` with ``u[0] == start``.

    Piece ``i`` is ``t[u[i]:u[i+1]]`` and is the image of pattern symbol ``p[i]``.
    """

    start: int
    boundaries: tuple[int, ...]

    @classmethod
    def from_boundaries(cls, boundaries: Sequence[int]) -> "MatchPartition":
        b = tuple(boundaries)
        return cls(b[0], b)

    @property
    def end(self) -> int:
        return self.boundaries[-1]

    def pieces(self, t: SymbolString | Sequence[int]) -> list[tuple[int, ...]]:
        txt = as_symbols(t)
        b = self.boundaries
        return [txt[b[i]:b[i + 1]] for i in range(len(b) - 1)]

    def mapping(self, p: SymbolString | Sequence[int], t: SymbolString | Sequence[int]) -> dict:
        """The induced function f: pattern symbol -> text slice."""
        return dict(zip(as_symbols(p), self.pieces(t)))

    def shifted(self, offset: int) -> "MatchPartition":
        return MatchPartition(self.start + offset, tuple(x + offset for x in self.boundaries))


def verify(p: SymbolString | Sequence[int], t: SymbolString | Sequence[int], mp: MatchPartition) -> bool:
    """True iff every piece is non-empty and equal symbols map to equal slices."""
    pat, txt = as_symbols(p), as_symbols(t)
    b = mp.boundaries
    if len(b) != len(pat) + 1:
        raise InvalidPartition(f"expected {len(pat) + 1} boundaries, got {len(b)}")
    if b[0] != mp.start:
        raise InvalidPartition("first boundary must equal the start")
    if min(b) < 0 or max(b) > len(txt):
        raise InvalidPartition("boundary outside the text")
    seen: dict = {}
    for i, sym in enumerate(pat):
        lo, hi = b[i], b[i + 1]
        if hi <= lo:
            return False
        piece = txt[lo:hi]
        if seen.setdefault(sym, piece) != piece:
            return False
    return True


class Deadline:
    """Cooperative wall-clock budget; ``check`` raises :class:`TimedOut`."""

    __slots__ = ("limit", "_tick")

    def __init__(self, seconds: float | None):
        if seconds is not None and seconds <= 0:
            raise ValueError("deadline must be positive")
        self.limit = None if seconds is None else time.monotonic() + seconds
        self._tick = 0

    def expired(self) -> bool:
        return self.limit is not None and time.monotonic() > self.limit

    def check(self, partial=(), every: int = 64) -> None:
        if self.limit is None:
            return
        self._tick += 1
        if self._tick % every == 0 and time.monotonic() > self.limit:
            raise TimedOut(partial)
