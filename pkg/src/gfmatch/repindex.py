"""Suffix tree construction and the repetition list built from it.

A repetition is recorded as ``(length, occ, positions)``: a text substring of
the given length occurring at every listed start position.  The unpruned list
holds one repetition per internal suffix-tree node (right-maximal repeats).
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Sequence

from .core import SymbolString, as_symbols
from .errors import EmptyRepetitionList

_TERMINATOR = -1
_OPEN = -1


class SuffixTree:
    """Ukkonen's online construction over integer symbols.

    Nodes are integer ids into parallel lists.  Edge labels are half-open
    ``[start, end)`` ranges into ``self.text``, which is the input followed by
    a unique terminator.  Node 0 is the root.
    """

    def __init__(self, t: SymbolString | Sequence[int]):
        self.source = as_symbols(t)
        self.n = len(self.source)
        self.text = self.source + (_TERMINATOR,)
        self.start: list[int] = []
        self.end: list[int] = []
        self.link: list[int] = []
        self.children: list[dict] = []
        self._new_node(-1, -1)
        self._build()
        self._annotate()
        self._positions: dict[int, tuple[int, ...]] = {}

    def _new_node(self, start: int, end: int) -> int:
        self.start.append(start)
        self.end.append(end)
        self.link.append(0)
        self.children.append({})
        return len(self.start) - 1

    def _build(self) -> None:
        text, start, end, link, children = self.text, self.start, self.end, self.link, self.children
        new_node = self._new_node
        active_node, active_edge, active_len, remainder = 0, 0, 0, 0
        for i, c in enumerate(text):
            remainder += 1
            last_new = 0
            while remainder:
                if active_len == 0:
                    active_edge = i
                nxt = children[active_node].get(text[active_edge])
                if nxt is None:
                    children[active_node][text[active_edge]] = new_node(i, _OPEN)
                    if last_new:
                        link[last_new] = active_node
                        last_new = 0
                else:
                    edge_end = i + 1 if end[nxt] == _OPEN else end[nxt]
                    edge_len = edge_end - start[nxt]
                    if active_len >= edge_len:
                        active_edge += edge_len
                        active_len -= edge_len
                        active_node = nxt
                        continue
                    if text[start[nxt] + active_len] == c:
                        if last_new and active_node:
                            link[last_new] = active_node
                            last_new = 0
                        active_len += 1
                        break
                    split = new_node(start[nxt], start[nxt] + active_len)
                    children[active_node][text[active_edge]] = split
                    children[split][c] = new_node(i, _OPEN)
                    start[nxt] += active_len
                    children[split][text[start[nxt]]] = nxt
                    if last_new:
                        link[last_new] = split
                    last_new = split
                remainder -= 1
                if active_node == 0 and active_len > 0:
                    active_len -= 1
                    active_edge = i - remainder + 1
                elif active_node:
                    active_node = link[active_node]
        size = len(text)
        for v in range(1, len(end)):
            if end[v] == _OPEN:
                end[v] = size

    def _annotate(self) -> None:
        count = len(self.start)
        self.depth = [0] * count
        self.parent = [0] * count
        self.leaf_count = [0] * count
        order = []
        stack = [0]
        while stack:
            v = stack.pop()
            order.append(v)
            for child in self.children[v].values():
                self.parent[child] = v
                self.depth[child] = self.depth[v] + self.end[child] - self.start[child]
                stack.append(child)
        for v in reversed(order):
            if not self.children[v]:
                self.leaf_count[v] = 1
            if v:
                self.leaf_count[self.parent[v]] += self.leaf_count[v]
        self._order = order

    @property
    def node_count(self) -> int:
        return len(self.start)

    def is_leaf(self, v: int) -> bool:
        return not self.children[v]

    def internal_nodes(self) -> list[int]:
        """Internal nodes other than the root, in DFS pre-order."""
        return [v for v in self._order if v and self.children[v]]

    def label(self, v: int) -> tuple[int, ...]:
        d = self.depth[v]
        pos = self.positions(v)[0]
        return self.text[pos:pos + d]

    def positions(self, v: int) -> tuple[int, ...]:
        """Sorted start positions of the path label of ``v``."""
        cached = self._positions.get(v)
        if cached is not None:
            return cached
        size = len(self.text)
        out = []
        stack = [v]
        while stack:
            u = stack.pop()
            kids = self.children[u]
            if kids:
                stack.extend(kids.values())
            else:
                suffix = size - self.depth[u]
                if suffix < self.n:
                    out.append(suffix)
        result = tuple(sorted(out))
        self._positions[v] = result
        return result

    def locate(self, pos: int, length: int) -> int:
        """Node at or just below the end of ``text[pos:pos+length]``."""
        v, matched = 0, 0
        while matched < length:
            v = self.children[v][self.text[pos + matched]]
            matched = self.depth[v]
        return v


@dataclass(frozen=True)
class Repetition:
    length: int
    positions: tuple[int, ...]

    @property
    def occ(self) -> int:
        return len(self.positions)

    def __str__(self) -> str:
        return f"{self.length}\t{self.occ}\t{','.join(map(str, self.positions))}"


def build_suffix_tree(t: SymbolString | Sequence[int]) -> SuffixTree:
    return SuffixTree(t)


def _sort_key(rep: Repetition):
    return (-rep.length, rep.positions[0], rep.positions)


def extract_repetitions(st: SuffixTree, pruned: bool = False) -> list[Repetition]:
    """One repetition per internal node, sorted by length then first position.

    With ``pruned``, a node is dropped when it is the suffix (via suffix link)
    of a longer node with the same number of occurrences.
    """
    nodes = st.internal_nodes()
    if pruned:
        redundant = {
            st.link[u] for u in nodes
            if st.link[u] and st.leaf_count[u] == st.leaf_count[st.link[u]]
        }
        nodes = [v for v in nodes if v not in redundant]
    reps = [Repetition(st.depth[v], st.positions(v)) for v in nodes]
    reps.sort(key=_sort_key)
    return reps


def split_repetitions(reps: Sequence[Repetition], rounds: int, st: SuffixTree) -> list[Repetition]:
    """Recover suffixes of the given repetitions by repeated halving.

    After ``k`` rounds a repetition of length ``l`` contributes its suffixes
    starting at offsets ``floor(i * l / 2**k)`` for ``i < 2**k``: one round
    turns ``abcd`` into ``{abcd, cd}``, two rounds into ``{abcd, bcd, cd, d}``.
    Occurrences of each suffix are looked up again in the tree, since a
    suffix may occur more often than its parent.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    seen = {(r.length, r.positions) for r in reps}
    out = list(reps)
    parts = 1 << rounds
    for rep in reps:
        if rep.length < 2:
            continue
        first = rep.positions[0]
        for offset in sorted({i * rep.length // parts for i in range(1, parts)}):
            length = rep.length - offset
            positions = st.positions(st.locate(first + offset, length))
            key = (length, positions)
            if len(positions) >= 2 and key not in seen:
                seen.add(key)
                out.append(Repetition(length, positions))
    out.sort(key=_sort_key)
    return out


@dataclass(frozen=True)
class MergedOccurrenceList:
    """Every repetition occurrence, ordered by position then repetition length.

    ``entries[e] = (position, rep_index, occ_index)``.  ``rep_entries[r]`` is
    the increasing list of entry indices that belong to repetition ``r``.
    """

    entries: tuple[tuple[int, int, int], ...]
    positions: tuple[int, ...]
    rep_entries: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.entries)

    def first_at_or_after(self, pos: int) -> int:
        return bisect.bisect_left(self.positions, pos)


def merge_occurrences(reps: Sequence[Repetition]) -> MergedOccurrenceList:
    if not reps:
        raise EmptyRepetitionList("no repetitions to merge")
    flat = [
        (pos, rep.length, r, k)
        for r, rep in enumerate(reps)
        for k, pos in enumerate(rep.positions)
    ]
    flat.sort()
    entries = tuple((pos, r, k) for pos, _, r, k in flat)
    per_rep: list[list[int]] = [[] for _ in reps]
    for e, (_, r, _) in enumerate(entries):
        per_rep[r].append(e)
    return MergedOccurrenceList(
        entries=entries,
        positions=tuple(e[0] for e in entries),
        rep_entries=tuple(tuple(x) for x in per_rep),
    )


def dump_repetitions(reps: Sequence[Repetition]) -> str:
    """``length<TAB>occ<TAB>pos,pos,...``, one repetition per line."""
    return "".join(f"{rep}\n" for rep in reps)


def repetition_count(t: SymbolString | Sequence[int]) -> int:
    """Number of internal suffix-tree nodes (distinct right-maximal repeats)."""
    return len(build_suffix_tree(t).internal_nodes())
