"""Automorphism groups of colored graphs by individualization-refinement.

The first path always individualizes the smallest vertex of the smallest
non-singleton cell.  Levels are then revisited from the bottom up: for each
other vertex of the level's target cell that is not yet known to lie in
the orbit of the first-path vertex, a trace-matched subtree is searched
for a leaf that is an automorphism.  The generators found form a strong
generating set relative to the first path, so the group order is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .bases import BaseResult, cobase_fpt, is_base, min_base_exact, CobaseResult
from .graph import ColoredGraph
from .perm import PermGroup, Permutation, _Chain
from .refinement import OrderedPartition


@dataclass
class AutGroup:
    graph: ColoredGraph
    group: PermGroup
    # first-path vertices; the chain base of ``group``
    path: tuple = ()
    nodes: int = 0

    def order(self) -> int:
        return self.group.order()

    @property
    def generators(self) -> tuple:
        return self.group.generators


def is_automorphism(graph: ColoredGraph, images) -> bool:
    colors = graph.colors
    if any(colors[v] != colors[images[v]] for v in range(graph.n)):
        return False
    adj = graph.adj_sets
    for u, v in graph.edges:
        if images[v] not in adj[images[u]]:
            return False
    return True


def _target_cell(part: OrderedPartition) -> int:
    best, size = -1, None
    for i, c in enumerate(part.cells):
        if len(c) > 1 and (size is None or len(c) < size):
            best, size = i, len(c)
    return best


def _orbit_of(point: int, gens) -> set:
    seen = {point}
    stack = [point]
    while stack:
        p = stack.pop()
        for g in gens:
            q = g[p]
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return seen


class _Search:
    def __init__(self, graph: ColoredGraph, root: OrderedPartition | None = None):
        self.graph = graph
        self.n = graph.n
        self.root = root if root is not None else OrderedPartition.from_graph(graph)
        self.gens: list[tuple] = []
        self.nodes = 0

    def first_path(self):
        part = self.root.copy()
        self.parts = []      # partition before each individualization
        self.targets = []    # target cell index per level
        self.path = []
        self.traces = []
        while not part.is_discrete():
            t = _target_cell(part)
            v = min(part.cells[t])
            self.parts.append(part.copy())
            self.targets.append(t)
            self.path.append(v)
            trace: list = []
            part.individualize(v, trace)
            self.traces.append(trace)
            self.nodes += 1
        self.leaf = [c[0] for c in part.cells]

    def leaf_map(self, part: OrderedPartition) -> tuple:
        img = [0] * self.n
        for c, v in zip(part.cells, self.leaf):
            img[v] = c[0]
        return tuple(img)

    def subtree(self, part: OrderedPartition, level: int, fixed: list) -> tuple | None:
        """Find a leaf below ``part`` (at depth ``level``) giving an automorphism."""
        self.nodes += 1
        if part.is_discrete():
            img = self.leaf_map(part)
            return img if is_automorphism(self.graph, img) else None
        t = self.targets[level]
        cell = sorted(part.cells[t])
        gens = [g for g in self.gens if all(g[p] == p for p in fixed)]
        covered: set = set()
        for v in cell:
            if v in covered:
                continue
            if gens:
                covered |= _orbit_of(v, gens)
            child = part.copy()
            if not child.individualize(v, None, self.traces[level]):
                continue
            fixed.append(v)
            found = self.subtree(child, level + 1, fixed)
            fixed.pop()
            if found is not None:
                return found
        return None

    def run(self) -> list[tuple]:
        self.first_path()
        for level in range(len(self.path) - 1, -1, -1):
            b = self.path[level]
            prefix = self.path[:level]
            part = self.parts[level]
            cell = sorted(part.cells[self.targets[level]])
            orbit = _orbit_of(b, self.gens)
            for w in cell:
                if w in orbit:
                    continue
                child = part.copy()
                self.nodes += 1
                if not child.individualize(w, None, self.traces[level]):
                    continue
                img = self.subtree(child, level + 1, prefix + [w])
                if img is not None:
                    self.gens.append(img)
                    orbit = _orbit_of(b, self.gens)
        return self.gens


def automorphism_group(graph: ColoredGraph) -> AutGroup:
    search = _Search(graph)
    gens = search.run()
    group = PermGroup(graph.n, [Permutation._raw(g) for g in gens])
    # the search levels already give a base and strong generating set
    chain = _Chain(graph.n, list(search.path), [g.images for g in group.generators])
    for i in range(len(chain.base)):
        chain.compute_level(i)
    group._chain = chain
    return AutGroup(graph, group, tuple(search.path), search.nodes)


def automorphism_group_brute(graph: ColoredGraph) -> list[tuple]:
    """Every automorphism, by plain backtracking without refinement (oracle)."""
    n = graph.n
    adj = graph.adj_sets
    colors = graph.colors
    out = []
    img = [-1] * n
    used = [False] * n

    def extend(v):
        if v == n:
            out.append(tuple(img))
            return
        for w in range(n):
            if used[w] or colors[w] != colors[v]:
                continue
            if any((u in adj[v]) != (img[u] in adj[w]) for u in range(v)):
                continue
            img[v] = w
            used[w] = True
            extend(v + 1)
            used[w] = False
        img[v] = -1

    extend(0)
    return out


def _elements(group: PermGroup):
    """Every element as an image tuple, walking the stabilizer chain."""
    group.build_bsgs()
    chain = group._chain
    levels = [list(t.values()) for t in chain.transversals]
    ident = tuple(range(group.n))

    def walk(i, acc):
        if i < 0:
            yield acc
            return
        for u in levels[i]:
            yield from walk(i - 1, tuple(map(u.__getitem__, acc)))

    # element = u_last * ... * u_0 read right to left
    yield from walk(len(levels) - 1, ident)


FILTER_LIMIT = 10 ** 6


def support_bounded_automorphisms(graph: ColoredGraph, k: int,
                                  aut: AutGroup | None = None) -> list[Permutation]:
    """All nontrivial automorphisms moving at most ``k`` vertices.

    Small groups are filtered element by element; otherwise candidate
    supports are enumerated inside color classes.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k < 2:
        return []
    aut = aut or automorphism_group(graph)
    n = graph.n
    if aut.order() <= FILTER_LIMIT:
        out = []
        for img in _elements(aut.group):
            moved = sum(1 for i, x in enumerate(img) if i != x)
            if 0 < moved <= k:
                out.append(Permutation._raw(img))
        return sorted(out, key=lambda p: p.images)
    moved_pts = sorted(set().union(*(g.support() for g in aut.generators)))
    out = set()
    for size in range(2, k + 1):
        for subset in itertools.combinations(moved_pts, size):
            for perm in itertools.permutations(subset):
                if any(a == b or graph.colors[a] != graph.colors[b]
                       for a, b in zip(subset, perm)):
                    continue
                img = list(range(n))
                for a, b in zip(subset, perm):
                    img[a] = b
                if is_automorphism(graph, img):
                    out.add(tuple(img))
    return [Permutation._raw(g) for g in sorted(out)]


def is_fixing_set(graph: ColoredGraph, s, aut: AutGroup | None = None) -> bool:
    aut = aut or automorphism_group(graph)
    return is_base(aut.group, s)


def min_fixing_set(graph: ColoredGraph) -> BaseResult:
    return min_base_exact(automorphism_group(graph).group)


def cofix_fpt(graph: ColoredGraph, k: int) -> CobaseResult:
    """k vertices whose complement is a fixing set, via the subgroup generated
    by automorphisms of support at most k."""
    small = support_bounded_automorphisms(graph, k)
    return cobase_fpt(PermGroup(graph.n, small), k)


def cofix_brute(graph: ColoredGraph, k: int) -> tuple | None:
    aut = automorphism_group(graph)
    n = graph.n
    if k > n:
        return None
    for subset in itertools.combinations(range(n), k):
        rest = [v for v in range(n) if v not in subset]
        if is_base(aut.group, rest):
            return subset
    return None
