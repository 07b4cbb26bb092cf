"""Dominating set instances as bounded-round discreteness instances.

Every vertex v becomes two paths v_1..v_l and v'_1..v'_l; edges of the
input join the path starts on each side.  {v_1, v'_1} and each level pair
{v_i, v'_i} are color classes.  Individualizing v_1 separates the two
sides at v and at its neighbours in one round, and the paths carry the
split to their ends in l - 1 more.

The uncolored variant replaces colors by degree coding through a
half-graph on x_1..x_{n^2} plus twin pairs y, y' and z, z'.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..graph import ColoredGraph
from .builder import ReductionError


@dataclass
class DomsetReduction:
    graph: ColoredGraph | None
    k: int                      # individualization budget for the output
    l: int
    variant: str
    removed: tuple = ()         # isolated input vertices dropped beforehand
    # set when removing isolated vertices already decides the instance
    trivial: bool | None = None
    kept: tuple = ()            # input vertices represented in the output

    def start(self, v: int, side: int = 0) -> int:
        """Output vertex v_1 (side 0) or v'_1 (side 1) of input vertex v."""
        i = self.kept.index(v)
        return 2 * self.l * i + side * self.l


def dominating_set_brute(graph: ColoredGraph, k: int) -> tuple | None:
    """First dominating set of at most k vertices, smallest size first."""
    n = graph.n
    closed = [set(graph.adj[v]) | {v} for v in range(n)]
    for size in range(0, min(k, n) + 1):
        for d in itertools.combinations(range(n), size):
            covered = set()
            for v in d:
                covered |= closed[v]
            if len(covered) == n:
                return d
    return None


def _paths(vertices: list, edges, l: int):
    """Edges and colors of the two-path construction on ``vertices``."""
    index = {v: i for i, v in enumerate(vertices)}
    out_edges = []
    colors = []
    for i, _ in enumerate(vertices):
        base = 2 * l * i
        for side in (0, 1):
            start = base + side * l
            for t in range(l - 1):
                out_edges.append((start + t, start + t + 1))
        for t in range(l):
            colors.append(l * i + t)
        for t in range(l):
            colors.append(l * i + t)
    for u, v in edges:
        if u in index and v in index:
            a, b = 2 * l * index[u], 2 * l * index[v]
            out_edges.append((a, b))
            out_edges.append((a + l, b + l))
    return out_edges, colors


def domset_to_kdiscrete(x: ColoredGraph, k: int, l: int,
                        variant: str = "colored") -> DomsetReduction:
    """Instance that is k-Discrete[l] exactly when x has a dominating set of
    at most k vertices (k + 2 and no colors for the uncolored variant).
    Input colors are ignored."""
    if l < 1:
        raise ReductionError("l must be at least 1")
    if k < 0:
        raise ReductionError("k must be non-negative")
    if variant == "colored":
        vertices = list(range(x.n))
        edges, colors = _paths(vertices, x.edges, l)
        g = ColoredGraph.from_edges(2 * l * x.n, edges, colors)
        trivial = None if x.n else True
        return DomsetReduction(g, k, l, variant, (), trivial, tuple(vertices))
    if variant != "uncolored":
        raise ValueError(f"unknown variant {variant!r}")
    isolated = tuple(v for v in range(x.n) if not x.adj[v])
    vertices = [v for v in range(x.n) if x.adj[v]]
    k_left = k - len(isolated)
    if k_left < 0:
        return DomsetReduction(None, k_left, l, variant, isolated, False)
    if not vertices:
        return DomsetReduction(None, k_left, l, variant, isolated, True)
    n = len(vertices)
    if n < 2:
        raise ReductionError("degree coding needs at least two vertices")
    edges, _ = _paths(vertices, x.edges, l)
    nn = n * n
    first_x = 2 * l * n
    xs = list(range(first_x, first_x + nn))            # xs[i - 1] is x_i
    y, y2, z, z2 = first_x + nn, first_x + nn + 1, first_x + nn + 2, first_x + nn + 3
    for i in range(1, nn + 1):
        for j in range(i + 1, nn + 1):
            if i + j <= nn + 1:
                edges.append((xs[i - 1], xs[j - 1]))
    for h, _v in enumerate(vertices, start=1):
        a = 2 * l * (h - 1)
        for i in range(1, h * n + 1):
            edges.append((a, xs[i - 1]))
            edges.append((a + l, xs[i - 1]))
    for xi in xs:
        edges.append((y, xi))
        edges.append((y2, xi))
    # the half-graph degrees tie at x_j and x_{j+1} for this j
    j = (nn + 1) // 2
    edges += [(z, z2), (z, xs[j - 1]), (z2, xs[j - 1])]
    g = ColoredGraph.from_edges(first_x + nn + 4, edges)
    _check_degree_coding(g, xs, j, (y, y2), (z, z2))
    return DomsetReduction(g, k_left + 2, l, variant, isolated, None, tuple(vertices))


def _check_degree_coding(g: ColoredGraph, xs, j: int, *twins) -> None:
    """Fail loudly if the coding vertices do not behave as intended.

    Without the z edges, degrees along x_1..x_{n^2} must drop strictly at
    every step except from x_j to x_{j+1}; with them, every x_i must be
    told apart by its degree and whether it sees z.
    """
    adj = g.adj_sets
    for a, b in twins:
        if adj[a] - {b} != adj[b] - {a}:
            raise ReductionError(f"vertices {a} and {b} are not twins")
    z = twins[-1][0]
    sees_z = [z in adj[v] for v in xs]
    plain = [g.degree(v) - 2 * s for v, s in zip(xs, sees_z)]
    for i in range(1, len(xs)):
        if i != j and plain[i - 1] <= plain[i]:
            raise ReductionError(f"degrees of x_{i} and x_{i + 1} do not decrease")
    keys = [(g.degree(v), s) for v, s in zip(xs, sees_z)]
    if len(set(keys)) != len(keys):
        raise ReductionError("two coding vertices share degree and z-adjacency")
