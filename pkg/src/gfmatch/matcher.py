"""Suffix-tree repetition heuristic for generalized function matching.

Each repeating pattern symbol is mapped to a text repetition with enough
occurrences; the mapped repetitive subsequence is then located as a
subsequence of the merged occurrence list, overlapping pieces are trimmed,
and the non-repeating symbols are placed in the gaps.  Substring queries are
reduced to whole-text queries by flanking pattern and text with fresh symbols.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from itertools import combinations, product
from math import ceil, comb, log2
from typing import Iterator, Sequence

from .baseline import SUBSTRING, WHOLE, compositions
from .core import (
    Deadline,
    MatchPartition,
    PatternProfile,
    SymbolString,
    as_symbols,
    profile_pattern,
    verify,
)
from .errors import InvalidSpec, Rejected, TimedOut, TooManySolutions
from .repindex import (
    MergedOccurrenceList,
    Repetition,
    build_suffix_tree,
    extract_repetitions,
    merge_occurrences,
    split_repetitions,
)

PRUNED = "pruned"
FULL = "full"


@dataclass(frozen=True)
class MatcherConfig:
    """Options for :func:`match`.

    ``max_split_rounds=None`` allows ``ceil(log2 n)`` rounds, enough to
    recover every suffix discarded by pruning.  ``deadline`` is a budget in
    seconds.  ``all_gap_splits`` enumerates every placement of the pieces
    instead of the single greedy one.
    """

    mode: str = WHOLE
    completeness: str = PRUNED
    max_split_rounds: int | None = None
    max_matches: int | None = None
    deadline: float | None = None
    all_gap_splits: bool = False
    fallback_cap: int = 10**7

    def __post_init__(self):
        if self.mode not in (WHOLE, SUBSTRING):
            raise InvalidSpec(f"unknown mode {self.mode!r}")
        if self.completeness not in (PRUNED, FULL):
            raise InvalidSpec(f"unknown completeness {self.completeness!r}")
        if self.max_split_rounds is not None and self.max_split_rounds < 0:
            raise InvalidSpec("max_split_rounds must be >= 0")
        if self.max_matches is not None and self.max_matches < 1:
            raise InvalidSpec("max_matches must be >= 1")
        if self.deadline is not None and self.deadline <= 0:
            raise InvalidSpec("deadline must be positive")


# --- Whole-text reduction -------------------------------------------------


@dataclass(frozen=True)
class Flank:
    name: str

    def __str__(self) -> str:
        return self.name


ALPHA, BETA, HASH, DOLLAR = Flank("α"), Flank("β"), Flank("#"), Flank("$")


def _as_symbol_string(s: SymbolString | Sequence[int]) -> SymbolString:
    if isinstance(s, SymbolString):
        return s
    seq = tuple(s)
    return SymbolString(seq, tuple(range(max(seq, default=-1) + 1)))


@dataclass(frozen=True)
class Reduction:
    """Flanked instance ``(a p b, # t $)`` and the map back to substring matches."""

    pattern: SymbolString
    text: SymbolString

    def restore(self, mp: MatchPartition) -> MatchPartition:
        inner = tuple(x - 1 for x in mp.boundaries[1:-1])
        return MatchPartition(inner[0], inner)

    def lift(self, mp: MatchPartition) -> MatchPartition:
        """Inverse of :meth:`restore`."""
        n = len(self.text)
        return MatchPartition(0, (0, *(x + 1 for x in mp.boundaries), n))


def reduce_to_whole_text(p: SymbolString | Sequence[int], t: SymbolString | Sequence[int]) -> Reduction:
    ps, ts = _as_symbol_string(p), _as_symbol_string(t)
    a, b = ps.alphabet_size, ps.alphabet_size + 1
    h, d = ts.alphabet_size, ts.alphabet_size + 1
    return Reduction(
        SymbolString((a, *ps.symbols, b), ps.tokens + (ALPHA, BETA)),
        SymbolString((h, *ts.symbols, d), ts.tokens + (HASH, DOLLAR)),
    )


# --- Mappings and subsequence occurrences ---------------------------------


def enumerate_mappings(profile: PatternProfile, reps: Sequence[Repetition]) -> Iterator[dict]:
    """Admissible maps from repeating symbols to repetition indices.

    Symbols are taken in order of first appearance and the tuples of indices
    are produced in lexicographic order.
    """
    symbols = profile.rep_alphabet
    if not symbols:
        return
    choices = [
        [r for r, rep in enumerate(reps) if rep.occ >= profile.occurrence_count[sym]]
        for sym in symbols
    ]
    for combo in product(*choices):
        yield dict(zip(symbols, combo))


@dataclass(frozen=True)
class SubseqOccurrence:
    entries: tuple[int, ...]
    positions: tuple[int, ...]


def find_subsequence_occurrences(
    mapping: dict, profile: PatternProfile, merged: MergedOccurrenceList
) -> Iterator[SubseqOccurrence]:
    """Occurrences of the mapped repetitive subsequence in the merged list.

    Consecutive positions leave room for the piece and for the non-repeating
    symbols of the gap in between; the first position leaves room for the
    leading gap.  Results come in lexicographic order of positions.
    """
    sym = profile.rep_subseq
    gaps = profile.nrep_gaps
    r = len(sym)
    lists = {s: merged.rep_entries[mapping[s]] for s in set(sym)}
    pos_of = {s: [merged.positions[e] for e in ents] for s, ents in lists.items()}
    chosen: list[int] = []

    def rec(k: int, lo: int):
        s = sym[k]
        ents, ps = lists[s], pos_of[s]
        for i in range(bisect.bisect_left(ps, lo), len(ps)):
            chosen.append(ents[i])
            if k + 1 == r:
                entries = tuple(chosen)
                yield SubseqOccurrence(entries, tuple(merged.positions[e] for e in entries))
            else:
                yield from rec(k + 1, ps[i] + 1 + gaps[k + 1])
            chosen.pop()

    if r:
        yield from rec(0, gaps[0])


# --- Trimming and placement ------------------------------------------------


def _positions_of(occ) -> tuple[int, ...]:
    return tuple(occ.positions) if isinstance(occ, SubseqOccurrence) else tuple(occ)


def _trimmed_lengths(positions, mapping, profile, reps, n) -> dict:
    sym, gaps = profile.rep_subseq, profile.nrep_gaps
    r = len(sym)
    if len(positions) != r:
        raise ValueError("occurrence length does not match the repetitive subsequence")
    if positions[0] < gaps[0]:
        raise Rejected(Rejected.GAP_TOO_SMALL)
    if gaps[0] == 0 and positions[0] != 0:
        raise Rejected(Rejected.ADJACENCY)
    # local copy: only the repetitions in the image of the mapping
    lengths = {s: reps[mapping[s]].length for s in set(sym)}
    for k in range(r):
        nxt = positions[k + 1] if k + 1 < r else n
        cut = nxt - gaps[k + 1] - positions[k]
        if cut < lengths[sym[k]]:
            lengths[sym[k]] = cut
    if min(lengths.values()) <= 0:
        raise Rejected(Rejected.EMPTY_PIECE)
    for k in range(r):
        if gaps[k + 1] == 0:
            nxt = positions[k + 1] if k + 1 < r else n
            if positions[k] + lengths[sym[k]] != nxt:
                raise Rejected(Rejected.ADJACENCY)
    return lengths


def _greedy_cuts(lo: int, hi: int, parts: int) -> Iterator[tuple[int, ...]]:
    # one symbol each, the last piece of the gap absorbs the remainder
    yield tuple(range(lo, lo + parts))


def _all_cuts(lo: int, hi: int, parts: int) -> Iterator[tuple[int, ...]]:
    for cuts in combinations(range(lo + 1, hi), parts - 1):
        yield (lo, *cuts)


def _assemble(positions, lengths, profile, n, cut_gen) -> Iterator[tuple[int, ...]]:
    sym, gaps = profile.rep_subseq, profile.nrep_gaps
    r = len(sym)
    regions = []
    for j in range(r + 1):
        lo = 0 if j == 0 else positions[j - 1] + lengths[sym[j - 1]]
        hi = positions[j] if j < r else n
        regions.append(list(cut_gen(lo, hi, gaps[j])) if gaps[j] else [()])
    for gap_starts in product(*regions):
        bounds: list[int] = []
        for j in range(r):
            bounds.extend(gap_starts[j])
            bounds.append(positions[j])
        bounds.extend(gap_starts[r])
        bounds.append(n)
        yield tuple(bounds)


def trim_and_place(
    occ, mapping: dict, profile: PatternProfile, reps: Sequence[Repetition],
    t: SymbolString | Sequence[int],
) -> MatchPartition:
    """Trim the mapped repetitions and place the non-repeating symbols.

    Each piece is cut so it ends before the next matched start minus the
    room needed by the gap's non-repeating symbols; a cut applies to every
    use of the same repetition.  Zero-width gaps must be adjacent.  Raises
    :class:`Rejected` when no valid partition results.
    """
    txt = as_symbols(t)
    positions = _positions_of(occ)
    lengths = _trimmed_lengths(positions, mapping, profile, reps, len(txt))
    bounds = next(_assemble(positions, lengths, profile, len(txt), _greedy_cuts))
    mp = MatchPartition(0, bounds)
    if not verify(profile.pattern, txt, mp):
        raise Rejected(Rejected.EMPTY_PIECE)
    return mp


def place_all(
    occ, mapping: dict, profile: PatternProfile, reps: Sequence[Repetition],
    t: SymbolString | Sequence[int],
) -> Iterator[MatchPartition]:
    """Every partition compatible with the occurrence, not only the greedy one.

    Repetitions never followed by a zero-width gap may be trimmed to any
    length up to the greedy cut, and every gap may be split in any way.
    """
    txt = as_symbols(t)
    n = len(txt)
    positions = _positions_of(occ)
    try:
        longest = _trimmed_lengths(positions, mapping, profile, reps, n)
    except Rejected:
        return
    sym, gaps = profile.rep_subseq, profile.nrep_gaps
    anchored = {sym[k] for k in range(len(sym)) if gaps[k + 1] == 0}
    keys = list(longest)
    ranges = [[longest[s]] if s in anchored else range(1, longest[s] + 1) for s in keys]
    for combo in product(*ranges):
        lengths = dict(zip(keys, combo))
        for bounds in _assemble(positions, lengths, profile, n, _all_cuts):
            mp = MatchPartition(0, bounds)
            if verify(profile.pattern, txt, mp):
                yield mp


# --- Main loop ---------------------------------------------------------------


class _Enough(Exception):
    pass


class _Sweep:
    """One pass over all admissible (mapping, occurrence) pairs.

    Mappings are instantiated lazily: a repeating symbol is bound to a
    repetition the first time the scan of the merged list reaches it, and
    later occurrences of that symbol only look at that repetition's entries.
    Partial occurrences that can no longer survive trimming are abandoned
    early.  The surviving pairs are exactly those the nested
    mapping/occurrence loops would hand to the trimming step.
    """

    def __init__(self, profile, reps, merged, txt, cfg, clock, results):
        self.profile = profile
        self.sym = profile.rep_subseq
        self.gaps = profile.nrep_gaps
        self.reps = reps
        self.merged = merged
        self.txt = txt
        self.n = len(txt)
        self.cfg = cfg
        self.clock = clock
        self.results = results
        self.rep_len = [rep.length for rep in reps]
        self.rep_pos = [rep.positions for rep in reps]
        self.rep_occ = [rep.occ for rep in reps]
        self.mpos = merged.positions
        self.mrep = [e[1] for e in merged.entries]
        r = len(self.sym)
        # need[k]: text consumed from the start of piece k to the end
        need = [0] * (r + 1)
        for k in range(r - 1, -1, -1):
            need[k] = need[k + 1] + 1 + self.gaps[k + 1]
        self.need = need
        self.last_use = {s: k for k, s in enumerate(self.sym)}
        self.count = profile.occurrence_count
        self.positions = [0] * r
        self.assign: dict = {}
        self.cap: dict = {}
        self.forced: dict = {}

    def run(self) -> None:
        g0 = self.gaps[0]
        self._choose(0, g0, 0 if g0 == 0 else self.n)

    def _upper(self, k: int, hi: int) -> int:
        hi = min(hi, self.n - self.need[k])
        # a bound symbol used again later needs an occurrence far enough right
        for s, rep in self.assign.items():
            j = self.last_use[s]
            if j > k:
                hi = min(hi, self.rep_pos[rep][-1] - (self.need[k] - self.need[j]))
        return hi

    def _choose(self, k: int, lo: int, hi: int) -> None:
        hi = self._upper(k, hi)
        if lo > hi:
            return
        s = self.sym[k]
        rep = self.assign.get(s)
        if rep is not None:
            ps = self.rep_pos[rep]
            i = bisect.bisect_left(ps, lo)
            while i < len(ps) and ps[i] <= hi:
                self._place(k, ps[i])
                i += 1
            return
        uses, j = self.count[s], self.last_use[s]
        span = self.need[k] - self.need[j]
        mpos, mrep = self.mpos, self.mrep
        e = bisect.bisect_left(mpos, lo)
        while e < len(mpos) and mpos[e] <= hi:
            rep, pos = mrep[e], mpos[e]
            if self.rep_occ[rep] >= uses and self.rep_pos[rep][-1] >= pos + span:
                self.assign[s] = rep
                self.cap[s] = self.rep_len[rep]
                self._place(k, pos)
                del self.assign[s], self.cap[s]
            e += 1

    def _place(self, k: int, pos: int) -> None:
        self.clock.check(self.results)
        self.positions[k] = pos
        if k + 1 == len(self.sym):
            self._finish()
            return
        s, g = self.sym[k], self.gaps[k + 1]
        forced = self.forced.get(s)
        if g == 0:
            # adjacency: the next start fixes this piece's length
            if forced is not None:
                if forced <= self.cap[s]:
                    self._choose(k + 1, pos + forced, pos + forced)
                return
            for d in range(1, self.cap[s] + 1):
                self.forced[s] = d
                self._choose(k + 1, pos + d, pos + d)
            del self.forced[s]
            return
        # a gap: the next start only caps this piece's length
        lo = pos + g + (forced or 1)
        hi = self._upper(k + 1, self.n)
        nxt_rep = self.assign.get(self.sym[k + 1])
        if nxt_rep is not None:
            ps = self.rep_pos[nxt_rep]
            starts = ps[bisect.bisect_left(ps, lo):bisect.bisect_right(ps, hi)]
        else:
            mpos = self.mpos
            starts = sorted(set(mpos[bisect.bisect_left(mpos, lo):bisect.bisect_right(mpos, hi)]))
        saved = self.cap[s]
        for nxt in starts:
            self.cap[s] = min(saved, nxt - g - pos)
            self._choose(k + 1, nxt, nxt)
        self.cap[s] = saved

    def _finish(self) -> None:
        k = len(self.sym) - 1
        s, start, g = self.sym[k], self.positions[k], self.gaps[k + 1]
        forced = self.forced.get(s)
        if g == 0:
            d = self.n - start
            if d > self.cap[s] or (forced is not None and forced != d):
                return
        elif self.n - g - start < (forced or 1):
            return
        positions = tuple(self.positions)
        if self.cfg.all_gap_splits:
            found = list(place_all(positions, self.assign, self.profile, self.reps, self.txt))
        else:
            try:
                found = [trim_and_place(positions, self.assign, self.profile, self.reps, self.txt)]
            except Rejected:
                return
        for mp in found:
            self.results.setdefault(mp, None)
            if self.cfg.max_matches is not None and len(self.results) >= self.cfg.max_matches:
                raise _Enough


def _no_repetition_fallback(pat, txt, cfg, clock, results) -> None:
    n, m = len(txt), len(pat)
    total = comb(n - 1, m - 1)
    limit = cfg.max_matches
    if total > cfg.fallback_cap and (limit is None or limit > cfg.fallback_cap):
        raise TooManySolutions(f"{total} compositions exceed cap {cfg.fallback_cap}")
    for bounds in compositions(n, m):
        clock.check(results)
        mp = MatchPartition(0, bounds)
        if verify(pat, txt, mp):
            results.setdefault(mp, None)
            if limit is not None and len(results) >= limit:
                return


def _split_budget(cfg: MatcherConfig, n: int) -> int:
    if cfg.max_split_rounds is not None:
        return cfg.max_split_rounds
    return max(1, ceil(log2(n))) if n > 1 else 0


def _match_whole(pat, txt, cfg: MatcherConfig, clock: Deadline) -> list[MatchPartition]:
    results: dict = {}
    if len(pat) > len(txt):
        return []
    profile = profile_pattern(pat)
    try:
        if not profile.rep_subseq:
            _no_repetition_fallback(pat, txt, cfg, clock, results)
            return sorted(results)
        st = build_suffix_tree(txt)

        def sweep(reps):
            if not reps:
                return
            _Sweep(profile, reps, merge_occurrences(reps), txt, cfg, clock, results).run()

        def satisfied():
            if cfg.max_matches is None:
                return bool(results)
            return len(results) >= cfg.max_matches

        if cfg.completeness == FULL:
            sweep(extract_repetitions(st, pruned=False))
        else:
            base = extract_repetitions(st, pruned=True)
            sweep(base)
            budget = _split_budget(cfg, len(txt))
            rounds = 0
            while not satisfied() and rounds < budget:
                rounds += 1
                sweep(split_repetitions(base, rounds, st))
    except _Enough:
        pass
    except TimedOut:
        raise TimedOut(sorted(results)) from None
    return sorted(results)


def match(
    p: SymbolString | Sequence[int],
    t: SymbolString | Sequence[int],
    cfg: MatcherConfig | None = None,
) -> list[MatchPartition]:
    """All distinct verified partitions found by the heuristic, sorted.

    In substring mode each result carries the match start and the boundaries
    inside ``t``.  On deadline expiry :class:`TimedOut` is raised with the
    partitions found so far in ``partial``.
    """
    cfg = cfg or MatcherConfig()
    pat, txt = as_symbols(p), as_symbols(t)
    clock = Deadline(cfg.deadline)
    if len(pat) > len(txt):
        return []
    if cfg.mode == WHOLE:
        return _match_whole(pat, txt, cfg, clock)
    red = reduce_to_whole_text(p, t)
    try:
        found = _match_whole(red.pattern.symbols, red.text.symbols, cfg, clock)
    except TimedOut as exc:
        raise TimedOut(sorted(red.restore(mp) for mp in exc.partial)) from None
    return sorted(red.restore(mp) for mp in found)
