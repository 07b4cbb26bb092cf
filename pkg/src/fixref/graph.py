"""Vertex-colored simple graphs and ordered partitions of their vertex sets.

Vertices are the integers ``0..n-1``.  Colors are dense non-negative ids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised when a graph or partition violates a structural invariant."""


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class ColoredGraph:
    n: int
    edges: frozenset
    colors: tuple

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]] = (),
                   colors: Sequence[int] | None = None) -> "ColoredGraph":
        """Build and validate a graph.  Duplicate edges are rejected."""
        seen = set()
        for u, v in edges:
            e = _edge(int(u), int(v))
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
        cols = tuple(int(c) for c in colors) if colors is not None else (0,) * n
        g = cls(n, frozenset(seen), cols)
        validate(g)
        return g

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nb: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return tuple(tuple(sorted(x)) for x in nb)

    @cached_property
    def adj_sets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(x) for x in self.adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def num_colors(self) -> int:
        return max(self.colors) + 1 if self.colors else 0

    def has_edge(self, u: int, v: int) -> bool:
        return _edge(u, v) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def color_classes(self) -> list[list[int]]:
        classes: list[list[int]] = [[] for _ in range(self.num_colors)]
        for v, c in enumerate(self.colors):
            classes[c].append(v)
        return classes

    def recolor(self, colors: Sequence[int]) -> "ColoredGraph":
        return ColoredGraph(self.n, self.edges, tuple(colors))

    def induced(self, vertices: Sequence[int]) -> tuple["ColoredGraph", list[int]]:
        """Induced subgraph on ``vertices`` (relabelled in the given order).

        Colors are compacted order-preservingly.  Returns the subgraph and
        the list mapping new vertex ids to old ones.
        """
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[v]) for u, v in self.edges
                 if u in index and v in index]
        colors = compact_colors([self.colors[v] for v in vertices])
        return ColoredGraph(len(vertices), frozenset(_edge(*e) for e in edges),
                            tuple(colors)), list(vertices)

    def relabel(self, perm: Sequence[int]) -> "ColoredGraph":
        """Image of the graph under the vertex map ``v -> perm[v]``."""
        colors = [0] * self.n
        for v, c in enumerate(self.colors):
            colors[perm[v]] = c
        edges = frozenset(_edge(perm[u], perm[v]) for u, v in self.edges)
        return ColoredGraph(self.n, edges, tuple(colors))


def compact_colors(colors: Sequence[int]) -> list[int]:
    """Renumber colors to 0..c-1 keeping their relative order."""
    rank = {c: i for i, c in enumerate(sorted(set(colors)))}
    return [rank[c] for c in colors]


def validate(graph: ColoredGraph) -> None:
    """Raise GraphError describing the first violated invariant."""
    n = graph.n
    if n < 0:
        raise GraphError("negative vertex count")
    if len(graph.colors) != n:
        raise GraphError(f"color vector has length {len(graph.colors)}, expected {n}")
    for u, v in sorted(graph.edges):
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
    if any(c < 0 for c in graph.colors):
        raise GraphError("negative color id")
    used = set(graph.colors)
    for c in range(len(used)):
        if c not in used:
            raise GraphError(f"color gap: id {c} unused but {max(used)} present")


@dataclass(frozen=True)
class Coloring:
    """Ordered partition of ``0..n-1`` into cells."""

    cells: tuple
    cell_of: tuple = field(compare=False)

    @classmethod
    def from_cells(cls, cells: Iterable[Iterable[int]], n: int | None = None) -> "Coloring":
        cells_t = tuple(tuple(sorted(c)) for c in cells)
        size = sum(len(c) for c in cells_t)
        if n is None:
            n = size
        cell_of = [-1] * n
        for i, cell in enumerate(cells_t):
            if not cell:
                raise GraphError("empty cell")
            for v in cell:
                if not 0 <= v < n or cell_of[v] != -1:
                    raise GraphError(f"vertex {v} repeated or out of range")
                cell_of[v] = i
        if size != n:
            raise GraphError("cells do not cover the vertex set")
        return cls(cells_t, tuple(cell_of))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Coloring":
        """Cells are the label classes, ordered by label value."""
        groups: dict[int, list[int]] = {}
        for v, c in enumerate(labels):
            groups.setdefault(c, []).append(v)
        return cls.from_cells((groups[c] for c in sorted(groups)), len(labels))

    @classmethod
    def of_graph(cls, graph: ColoredGraph) -> "Coloring":
        return cls.from_labels(graph.colors)

    @property
    def n(self) -> int:
        return len(self.cell_of)

    def __len__(self) -> int:
        return len(self.cells)

    def is_discrete(self) -> bool:
        return len(self.cells) == len(self.cell_of)

    def partition(self) -> frozenset:
        return frozenset(frozenset(c) for c in self.cells)

    def refines(self, other: "Coloring") -> bool:
        """True if every cell of self lies inside a cell of ``other``."""
        return all(len({other.cell_of[v] for v in c}) == 1 for c in self.cells)

    def same_partition(self, other: "Coloring") -> bool:
        return self.partition() == other.partition()

    def singletons(self) -> list[int]:
        return [c[0] for c in self.cells if len(c) == 1]


def twin_classes(graph: ColoredGraph) -> Coloring:
    """Classes of same-colored twins, ``N(u) - {v} == N(v) - {u}``.

    Cells are ordered by their smallest vertex.
    """
    parent = list(range(graph.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    # false twins share the open neighbourhood, true twins the closed one
    buckets: dict = {}
    for v in range(graph.n):
        nb = graph.adj_sets[v]
        for key in ((0, graph.colors[v], nb), (1, graph.colors[v], nb | {v})):
            if key in buckets:
                a, b = find(buckets[key]), find(v)
                if a != b:
                    parent[max(a, b)] = min(a, b)
            else:
                buckets[key] = v
    groups: dict[int, list[int]] = {}
    for v in range(graph.n):
        groups.setdefault(find(v), []).append(v)
    return Coloring.from_cells(sorted(groups.values()), graph.n)


def bipartite_complement(graph: ColoredGraph, cell_i: Iterable[int],
                         cell_j: Iterable[int]) -> ColoredGraph:
    """Complement the edges running between two disjoint vertex sets."""
    a, b = set(cell_i), set(cell_j)
    if a & b:
        raise GraphError(f"cells overlap in {sorted(a & b)}")
    edges = set(graph.edges)
    for u in a:
        for v in b:
            edges ^= {_edge(u, v)}
    return ColoredGraph(graph.n, frozenset(edges), graph.colors)


def complement_within(graph: ColoredGraph, cell: Iterable[int]) -> ColoredGraph:
    """Complement the subgraph induced by ``cell``."""
    c = sorted(set(cell))
    edges = set(graph.edges)
    for i, u in enumerate(c):
        for v in c[i + 1:]:
            edges ^= {(u, v)}
    return ColoredGraph(graph.n, frozenset(edges), graph.colors)


def disjoint_union(*graphs: ColoredGraph, shared_colors: bool = False) -> ColoredGraph:
    """Disjoint union.  Colors are kept apart per operand unless shared."""
    n = 0
    edges = []
    colors: list[int] = []
    offset_c = 0
    for g in graphs:
        edges.extend((u + n, v + n) for u, v in g.edges)
        colors.extend(c + (0 if shared_colors else offset_c) for c in g.colors)
        offset_c += g.num_colors
        n += g.n
    return ColoredGraph(n, frozenset(edges), tuple(compact_colors(colors)))
