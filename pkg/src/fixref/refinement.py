"""Color refinement, individualization and color valence.

Two engines live here.  ``refine_step``/``stable_coloring`` run the naive
simultaneous re-coloring, one round at a time, so round counts are exact
(``Discrete[l]`` depends on them).  ``OrderedPartition`` is a worklist
refinement used by the search code; it reaches the same stable partition
but its intermediate states are not rounds.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import ColoredGraph, Coloring, GraphError, compact_colors


@dataclass(frozen=True)
class RefinementTrace:
    rounds: tuple  # Coloring per round; rounds[0] is the initial coloring
    stabilized_at: int

    @property
    def stable(self) -> Coloring:
        return self.rounds[-1]


def refine_step(graph: ColoredGraph, coloring: Coloring) -> Coloring:
    """One round: split cells by the multiset of neighbour cells.

    Child cells are ordered by (parent cell index, sorted signature).
    """
    if coloring.n != graph.n:
        raise GraphError(f"coloring covers {coloring.n} vertices, graph has {graph.n}")
    cell_of = coloring.cell_of
    adj = graph.adj
    sig = [(cell_of[v], tuple(sorted([cell_of[u] for u in adj[v]])))
           for v in range(graph.n)]
    keys = sorted(set(sig))
    index = {k: i for i, k in enumerate(keys)}
    cells: list[list[int]] = [[] for _ in keys]
    labels = []
    for v, s in enumerate(sig):
        i = index[s]
        cells[i].append(v)
        labels.append(i)
    return Coloring(tuple(tuple(c) for c in cells), tuple(labels))


def stable_coloring(graph: ColoredGraph, coloring: Coloring | None = None) -> RefinementTrace:
    current = coloring if coloring is not None else Coloring.of_graph(graph)
    rounds = [current]
    while True:
        nxt = refine_step(graph, current)
        rounds.append(nxt)
        if len(nxt) == len(current):
            break
        current = nxt
    return RefinementTrace(tuple(rounds), len(rounds) - 1)


def refine_rounds(graph: ColoredGraph, l: int, coloring: Coloring | None = None) -> Coloring:
    """Coloring after ``min(l, stabilization round)`` rounds."""
    if l < 0:
        raise ValueError("round count must be non-negative")
    current = coloring if coloring is not None else Coloring.of_graph(graph)
    for _ in range(l):
        nxt = refine_step(graph, current)
        if len(nxt) == len(current):
            break
        current = nxt
    return current


def individualize(graph: ColoredGraph, s: Sequence[int]) -> ColoredGraph:
    """Give each vertex of ``s`` a fresh color, in sequence order.

    Fresh ids follow the existing ones.  If a class is emptied the ids are
    compacted (order preserved) so the coloring stays dense.
    """
    s = list(s)
    if len(set(s)) != len(s):
        raise GraphError("duplicate vertex in individualization sequence")
    if not s:
        return graph
    base = graph.num_colors
    colors = list(graph.colors)
    for i, v in enumerate(s):
        if not 0 <= v < graph.n:
            raise GraphError(f"vertex {v} out of range")
        colors[v] = base + i
    return graph.recolor(compact_colors(colors))


def stable_graph(graph: ColoredGraph) -> ColoredGraph:
    """The graph recolored by its stable partition."""
    return graph.recolor(stable_partition(graph).cell_of)


def is_discrete(graph: ColoredGraph) -> bool:
    return stable_partition(graph).is_discrete()


def is_discrete_within(graph: ColoredGraph, l: int) -> bool:
    return refine_rounds(graph, l).is_discrete()


def color_valence(graph: ColoredGraph, coloring: Coloring | None = None) -> int:
    """max over v, C of min(deg_C(v), |C| - deg_C(v)), classes of ``coloring``.

    Defaults to the graph's own color classes.  ``|C|`` counts v itself
    when v lies in C.
    """
    col = coloring if coloring is not None else Coloring.of_graph(graph)
    sizes = [len(c) for c in col.cells]
    best = 0
    for v in range(graph.n):
        counts: dict[int, int] = {}
        for u in graph.adj[v]:
            c = col.cell_of[u]
            counts[c] = counts.get(c, 0) + 1
        for c, d in counts.items():
            val = min(d, sizes[c] - d)
            if val > best:
                best = val
    return best


class OrderedPartition:
    """Mutable ordered partition refined with a splitter queue.

    Every decision depends only on cell indices and neighbour counts, so the
    ordered result is isomorphism invariant; its set partition is the
    coarsest equitable refinement of the start.  A split keeps the part with
    the smallest count at the old index and appends the others.
    """

    __slots__ = ("adj", "cells", "cell_of")

    def __init__(self, adj, cells, cell_of):
        self.adj = adj
        self.cells = cells
        self.cell_of = cell_of

    @classmethod
    def from_graph(cls, graph: ColoredGraph, labels: Sequence[int] | None = None,
                   trace: list | None = None) -> "OrderedPartition":
        labels = graph.colors if labels is None else labels
        groups: dict[int, list[int]] = {}
        for v, c in enumerate(labels):
            groups.setdefault(c, []).append(v)
        cells = [groups[c] for c in sorted(groups)]
        cell_of = [0] * graph.n
        for i, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = i
        part = cls(graph.adj, cells, cell_of)
        part.refine(range(len(cells)), trace)
        return part

    def copy(self) -> "OrderedPartition":
        return OrderedPartition(self.adj, [c[:] for c in self.cells], self.cell_of[:])

    def __len__(self) -> int:
        return len(self.cells)

    def is_discrete(self) -> bool:
        return len(self.cells) == len(self.cell_of)

    def is_singleton(self, v: int) -> bool:
        return len(self.cells[self.cell_of[v]]) == 1

    def individualize(self, v: int, trace: list | None = None,
                      expected: Sequence | None = None) -> bool:
        """Split ``v`` off its cell and refine.

        With ``expected`` the run is compared against a recorded trace and
        abandoned (returning False) at the first difference.
        """
        ci = self.cell_of[v]
        cell = self.cells[ci]
        if len(cell) == 1:
            return expected is None or len(expected) == 0
        cell.remove(v)
        idx = len(self.cells)
        self.cells.append([v])
        self.cell_of[v] = idx
        entry = ("i", ci, len(cell))
        if trace is not None:
            trace.append(entry)
        if expected is not None:
            if not expected or expected[0] != entry:
                return False
            return self.refine((idx,), trace, expected, 1)
        return self.refine((idx,), trace)

    def refine(self, splitters: Iterable[int], trace: list | None = None,
               expected: Sequence | None = None, pos: int = 0) -> bool:
        adj, cells, cell_of = self.adj, self.cells, self.cell_of
        pending = deque(splitters)
        queued = set(pending)
        while pending:
            w = pending.popleft()
            queued.discard(w)
            cnt: dict[int, int] = {}
            for x in cells[w]:
                for y in adj[x]:
                    cnt[y] = cnt.get(y, 0) + 1
            touched = {cell_of[y] for y in cnt}
            for ci in sorted(touched):
                members = cells[ci]
                if len(members) == 1:
                    continue
                groups: dict[int, list[int]] = {}
                for y in members:
                    groups.setdefault(cnt.get(y, 0), []).append(y)
                if len(groups) == 1:
                    continue
                keys = sorted(groups)
                parts = [groups[k] for k in keys]
                cells[ci] = parts[0]
                indices = [ci]
                for p in parts[1:]:
                    idx = len(cells)
                    cells.append(p)
                    indices.append(idx)
                    for y in p:
                        cell_of[y] = idx
                if trace is not None or expected is not None:
                    entry = (w, ci, tuple((k, len(groups[k])) for k in keys))
                    if trace is not None:
                        trace.append(entry)
                    if expected is not None:
                        if pos >= len(expected) or expected[pos] != entry:
                            return False
                        pos += 1
                # a queued cell re-queues every part; otherwise the first
                # largest part can be left out
                skip = -1 if ci in queued else max(
                    range(len(parts)), key=lambda i: (len(parts[i]), -i))
                for i, idx in enumerate(indices):
                    if i != skip:
                        if idx not in queued:
                            pending.append(idx)
                            queued.add(idx)
        return expected is None or pos == len(expected)

    def coloring(self) -> Coloring:
        return Coloring(tuple(tuple(sorted(c)) for c in self.cells), tuple(self.cell_of))

    def labels(self) -> list[int]:
        return self.cell_of[:]


def stable_partition(graph: ColoredGraph, individualized: Sequence[int] = ()) -> Coloring:
    """Stable partition after individualizing ``individualized`` (fast path)."""
    part = OrderedPartition.from_graph(graph)
    for v in individualized:
        part.individualize(v)
    return part.coloring()
