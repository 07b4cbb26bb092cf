"""Class membership and individualization solvers."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import threebounded
from .autsearch import _Search, automorphism_group, _orbit_of
from .graph import ColoredGraph, GraphError, twin_classes
from .perm import PermGroup, Permutation
from .refinement import (OrderedPartition, color_valence, individualize,
                         is_discrete_within, stable_partition)


@dataclass(frozen=True)
class ClassTag:
    kind: str
    l: int | None = None

    def __post_init__(self):
        if self.kind not in TAG_KINDS:
            raise ValueError(f"unknown class {self.kind!r}")
        if (self.kind == "discrete_l") != (self.l is not None):
            raise ValueError("a round bound goes with discrete_l only")
        if self.l is not None and self.l < 0:
            raise ValueError("round bound must be non-negative")

    def __str__(self) -> str:
        return f"discrete_l({self.l})" if self.kind == "discrete_l" else self.kind


TAG_KINDS = ("discrete", "discrete_l", "amenable", "compact", "refinable", "rigid")
DISCRETE = ClassTag("discrete")
AMENABLE = ClassTag("amenable")
COMPACT = ClassTag("compact")
REFINABLE = ClassTag("refinable")
RIGID = ClassTag("rigid")


def discrete_l(l: int) -> ClassTag:
    return ClassTag("discrete_l", l)


def parse_tag(text: str, l: int | None = None) -> ClassTag:
    kind = text.replace("-", "_")
    if kind == "discrete_l":
        if l is None:
            raise ValueError("discrete-l needs a round bound")
        return discrete_l(l)
    return ClassTag(kind)


@dataclass
class SolveReport:
    answer: bool
    witness: tuple | None = None
    work: int = 0
    details: dict = field(default_factory=dict)


# membership ------------------------------------------------------------

def is_refinable(graph: ColoredGraph) -> bool:
    part = stable_partition(graph)
    if part.is_discrete():
        return True
    orbits = automorphism_group(graph).group.orbits()
    return len(orbits) == len(part)


def is_rigid(graph: ColoredGraph) -> bool:
    return automorphism_group(graph).order() == 1


def membership(graph: ColoredGraph, tag: ClassTag) -> bool:
    kind = tag.kind
    if kind == "discrete":
        return stable_partition(graph).is_discrete()
    if kind == "discrete_l":
        return is_discrete_within(graph, tag.l)
    if kind == "refinable":
        return is_refinable(graph)
    if kind == "rigid":
        return is_rigid(graph)
    if kind == "amenable":
        return threebounded.is_amenable_3bounded(graph)
    if kind == "compact":
        return threebounded.is_compact_3bounded(graph)
    raise ValueError(kind)


def hierarchy_flags(graph: ColoredGraph) -> dict:
    """Membership in each class of the chain; amenable/compact need 3-bounded input."""
    return {kind: membership(graph, ClassTag(kind))
            for kind in ("discrete", "amenable", "compact", "refinable")}


# k-subset search -------------------------------------------------------

class _ClassSearch:
    """Lexicographic search over increasing vertex tuples.

    A vertex is skipped when it is not the smallest in its orbit under the
    known automorphisms fixing the chosen prefix: a smaller image of any
    witness through it would come first, so the first witness survives.
    """

    def __init__(self, graph: ColoredGraph, k: int, tag: ClassTag, gens=None):
        self.graph = graph
        self.k = k
        self.tag = tag
        if gens is None:
            gens = [g.images for g in automorphism_group(graph).generators]
        self.gens = gens
        self.orbit_id = _orbit_ids(graph.n, gens)
        self.work = 0
        # with no automorphisms, refinable collapses to discrete
        self.wants_discrete = tag.kind == "discrete" or (tag.kind == "refinable" and not gens)

    def accept(self, chosen: list, part: OrderedPartition) -> bool:
        self.work += 1
        kind = self.tag.kind
        if kind == "discrete":
            return part.is_discrete()
        if kind == "discrete_l":
            return is_discrete_within(individualize(self.graph, chosen), self.tag.l)
        if kind == "refinable":
            return self.refinable_after(chosen, part)
        return membership(individualize(self.graph, chosen), self.tag)

    def refinable_after(self, chosen: list, part: OrderedPartition) -> bool:
        if part.is_discrete():
            return True
        # automorphisms fixing the set lie in Aut(X): a cell meeting two
        # Aut(X)-orbits cannot be an orbit of the smaller group
        for cell in part.cells:
            if len({self.orbit_id[v] for v in cell}) > 1:
                return False
        fixing = [g for g in self.gens if all(g[v] == v for v in chosen)]
        if len(_orbit_ids_count(self.graph.n, fixing)) == len(part.cells):
            return True
        search = _Search(self.graph, part.copy())
        found = search.run()
        self.work += search.nodes
        return len(_orbit_ids_count(self.graph.n, found)) == len(part.cells)

    def candidates(self, chosen: list, part: OrderedPartition, start: int) -> list:
        n = self.graph.n
        gens = [g for g in self.gens if all(g[v] == v for v in chosen)]
        out = []
        covered: set = set()
        last = len(chosen) + 1 == self.k
        for w in range(start, n):
            if w in covered:
                continue
            if gens:
                orb = _orbit_of(w, gens)
                covered |= orb
                if min(orb) < w:
                    continue
            if last and self.wants_discrete and part.is_singleton(w):
                continue
            out.append(w)
        return out

    def dfs(self, part: OrderedPartition, chosen: list, start: int):
        if len(chosen) == self.k:
            return tuple(chosen) if self.accept(chosen, part) else None
        need = self.k - len(chosen)
        if self.wants_discrete and linked_cell_components(part) > need:
            return None
        if self.wants_discrete and part.is_discrete():
            rest = [w for w in range(start, self.graph.n)][:need]
            return tuple(chosen + rest) if len(rest) == need else None
        for w in self.candidates(chosen, part, start):
            if self.graph.n - w < need:
                break
            child = part.copy()
            child.individualize(w)
            self.work += 1
            found = self.dfs(child, chosen + [w], w + 1)
            if found is not None:
                return found
        return None

    def discretizable(self, root: OrderedPartition) -> bool:
        """False when no k vertices can make the stable partition discrete.

        Individualization is monotone: if individualizing v alone gives a
        partition at least as fine as u alone, then v can replace u in any
        set.  So some working k-set exists only if one exists among the
        vertices whose single-vertex partitions are maximal.
        """
        reps: dict = {}
        for v in range(self.graph.n):
            child = root.copy()
            child.individualize(v)
            self.work += 1
            relabel: dict = {}
            key = tuple(relabel.setdefault(c, len(relabel)) for c in child.cell_of)
            reps.setdefault(key, v)
        keys = list(reps)
        sizes = [max(k) + 1 for k in keys]
        top = []
        for i, a in enumerate(keys):
            if not any(sizes[j] > sizes[i] and len(set(zip(b, a))) == sizes[j]
                       for j, b in enumerate(keys)):
                top.append(reps[a])
        for subset in itertools.combinations(top, min(self.k, len(top))):
            child = root.copy()
            for v in subset:
                child.individualize(v)
            self.work += 1
            if child.is_discrete():
                return True
        return False

    def run_from(self, firsts=None):
        root = OrderedPartition.from_graph(self.graph)
        if self.k == 0:
            return () if self.accept([], root) else None
        if self.wants_discrete and self.k >= 2 and not self.discretizable(root):
            return None
        if firsts is None:
            return self.dfs(root, [], 0)
        for w in firsts:
            child = root.copy()
            child.individualize(w)
            found = self.dfs(child, [w], w + 1)
            if found is not None:
                return found
        return None


def linked_cell_components(part: OrderedPartition) -> int:
    """Groups of non-singleton cells joined by partial (neither empty nor
    complete) adjacency.  Individualizing one vertex of a stable partition
    can only split cells of its own group, so this count bounds from below
    the individualizations still needed for discreteness."""
    cells, cell_of = part.cells, part.cell_of
    big = [i for i, c in enumerate(cells) if len(c) > 1]
    parent = {i: i for i in big}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in big:
        counts: dict = {}
        for w in part.adj[next(iter(cells[i]))]:
            j = cell_of[w]
            counts[j] = counts.get(j, 0) + 1
        for j, d in counts.items():
            if j != i and j in parent and d < len(cells[j]):
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    return len({find(i) for i in big})


def _orbit_ids(n: int, gens) -> list[int]:
    ids = list(range(n))
    for v in range(n):
        if ids[v] == v:
            for w in _orbit_of(v, gens):
                ids[w] = v
    return ids


def _orbit_ids_count(n: int, gens) -> set:
    return set(_orbit_ids(n, gens))


def _worker(args):
    graph, k, tag, gens, firsts = args
    search = _ClassSearch(graph, k, tag, gens)
    return search.run_from(firsts), search.work


def k_class_search(graph: ColoredGraph, k: int, tag: ClassTag, jobs: int = 1) -> SolveReport:
    """First k-set (lexicographic) whose individualization lands in ``tag``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > graph.n:
        return SolveReport(False, None, 0)
    search = _ClassSearch(graph, k, tag)
    root = OrderedPartition.from_graph(graph)
    # a discrete root is settled without branching
    if jobs <= 1 or k == 0 or (search.wants_discrete and root.is_discrete()):
        found = search.run_from()
        return SolveReport(found is not None, found, search.work)
    firsts = search.candidates([], root, 0)
    chunks = [firsts[i::jobs] for i in range(jobs)]
    with ProcessPoolExecutor(jobs) as pool:
        results = list(pool.map(_worker, [(graph, k, tag, search.gens, c) for c in chunks]))
    hits = [r for r, _ in results if r is not None]
    work = sum(w for _, w in results)
    best = min(hits) if hits else None
    return SolveReport(best is not None, best, work)


def k_class_brute(graph: ColoredGraph, k: int, tag: ClassTag) -> tuple | None:
    """Plain scan of all k-subsets with the membership oracle."""
    for s in itertools.combinations(range(graph.n), k):
        if membership(individualize(graph, s), tag):
            return s
    return None


def k_color_valence(graph: ColoredGraph, k: int, d: int) -> SolveReport:
    """First k-set after whose individualization the refined valence is <= d."""
    if k < 0 or d < 0:
        raise ValueError("k and d must be non-negative")
    work = 0
    for s in itertools.combinations(range(graph.n), k):
        work += 1
        g = individualize(graph, s)
        if color_valence(g, stable_partition(g)) <= d:
            return SolveReport(True, s, work)
    return SolveReport(False, None, work)


# (n - k)-Discrete --------------------------------------------------------

@dataclass
class Kernel:
    graph: ColoredGraph
    k: int
    # kernel vertex -> original vertex, when the kernel is a subgraph
    vertex_map: tuple | None
    trivial: bool = False
    # a verified solution of the original instance, when one was built
    solution: tuple | None = None
    removed: tuple = ()


def _free_set_discrete(graph: ColoredGraph, free) -> bool:
    fs = set(free)
    return stable_partition(graph, [v for v in range(graph.n) if v not in fs]).is_discrete()


def _neighbourhood_blocks(graph: ColoredGraph, t: list) -> list[list[int]]:
    ts = set(t)
    blocks: dict = {}
    for u in range(graph.n):
        if u in ts:
            continue
        key = (graph.colors[u], frozenset(graph.adj_sets[u] & ts))
        blocks.setdefault(key, []).append(u)
    return sorted(blocks.values(), key=lambda b: (-len(b), b[0]))


def _twin_witness(graph: ColoredGraph, x: int, y: int, within=None):
    """Lowest vertex adjacent to exactly one of x, y (other than x, y)."""
    nx, ny = graph.adj_sets[x], graph.adj_sets[y]
    for z in sorted((nx ^ ny) - {x, y}):
        if within is None or z in within:
            return z
    return None


def twin_free_free_set(graph: ColoredGraph, k: int) -> tuple | None:
    """Non-individualized k-set for a twin-free graph with more than 2k vertices.

    Starts from the first k vertices and repeatedly either reads a solution
    off the neighbourhood blocks or trades a class-splitting vertex for a
    vertex that refinement isolates anyway.  Returns None if a step has no
    valid choice (possible only with several colors).
    """
    n = graph.n
    t = list(range(k))
    for _ in range(n + 1):
        if _free_set_discrete(graph, t):
            return tuple(sorted(t))
        blocks = _neighbourhood_blocks(graph, t)
        if len(blocks) >= k:
            s = tuple(sorted(b[0] for b in blocks[:k]))
            return s if _free_set_discrete(graph, s) else None
        ts = set(t)
        part = stable_partition(graph, [v for v in range(n) if v not in ts])
        classes = sorted((c for c in part.cells if len(c) > 1), key=lambda c: (-len(c), c[0]))
        if not classes:
            return tuple(sorted(t))
        u, v = classes[0][0], classes[0][1]
        a = _twin_witness(graph, u, v, ts)
        if a is None:
            return None
        rest = [w for w in t if w != a]
        z = None
        b1 = blocks[0]
        for x, y in itertools.combinations(b1, 2):
            z = _twin_witness(graph, x, y)
            if z is not None and z not in ts and z not in (x, y):
                break
            z = None
        if z is None:
            return None
        t_next = sorted(rest + [z])
        before = len(part)
        after = len(stable_partition(graph, [w for w in range(n) if w not in set(t_next)]))
        if after <= before:
            return None
        t = t_next
    return None


def _brute_free_set(graph: ColoredGraph, k: int, vertices=None) -> tuple | None:
    pool = range(graph.n) if vertices is None else vertices
    for s in itertools.combinations(pool, k):
        if _free_set_discrete(graph, s):
            return s
    return None


def _trivial_yes(k: int) -> ColoredGraph:
    return ColoredGraph.from_edges(1)


def _trivial_no(k: int) -> ColoredGraph:
    m = k + 1
    return ColoredGraph.from_edges(m, [(i, j) for i in range(m) for j in range(i + 1, m)])


def reduce_twins(graph: ColoredGraph) -> tuple[ColoredGraph, list, tuple]:
    """Keep one vertex per twin class and fold the rest into colors.

    Dropped twins are always individualized, and an individualized twin of
    ``r`` separates exactly the vertices adjacent to it: the neighbours of
    ``r`` other than ``r``, plus ``r`` when the twins are adjacent.  That
    mark is added to each kept vertex's color so refinement sees the same
    information without the dropped vertices.
    """
    twins = twin_classes(graph)
    keep = [c[0] for c in twins.cells]
    removed = tuple(sorted(v for c in twins.cells for v in c[1:]))
    marks = []
    for c in twins.cells:
        if len(c) < 2:
            continue
        r, t = c[0], c[1]
        adjacent = graph.has_edge(r, t)
        marks.append((r, adjacent))
    labels = []
    for u in keep:
        key = tuple((u != r and graph.has_edge(u, r)) or (u == r and adjacent)
                    for r, adjacent in marks)
        labels.append((graph.colors[u], key))
    reduced, names = graph.induced(keep)
    rank = {lab: i for i, lab in enumerate(sorted(set(labels)))}
    reduced = reduced.recolor([rank[lab] for lab in labels])
    return reduced, names, removed


def kernelize_nk_discrete(graph: ColoredGraph, k: int) -> Kernel:
    """Kernel with at most max(1, 2k) vertices for the (n-k)-Discrete question."""
    if k < 0:
        raise ValueError("k must be non-negative")
    reduced, names, removed = reduce_twins(graph)
    if reduced.n <= 2 * k:
        return Kernel(reduced, k, tuple(names), removed=removed)
    free = twin_free_free_set(reduced, k)
    if free is None:
        # several colors can block the exchange argument; search directly
        free = _brute_free_set(reduced, k)
    if free is None:
        return Kernel(_trivial_no(k), k, None, trivial=True, removed=removed)
    solution = tuple(sorted(names[v] for v in free))
    small = _trivial_yes(k)
    return Kernel(small, min(k, 1), None, trivial=True, solution=solution,
                  removed=removed)


def nk_discrete_solve(graph: ColoredGraph, k: int) -> SolveReport:
    """Is there a k-set whose complement, individualized, makes the graph discrete?

    The witness is the set left non-individualized.
    """
    if k > graph.n:
        return SolveReport(False, None, 0)
    kern = kernelize_nk_discrete(graph, k)
    details = {"kernel_size": kern.graph.n, "kernel_k": kern.k, "trivial": kern.trivial}
    if kern.trivial:
        witness = kern.solution
        return SolveReport(witness is not None, witness, 1, details)
    work = 0
    for s in itertools.combinations(range(kern.graph.n), kern.k):
        work += 1
        if _free_set_discrete(kern.graph, s):
            witness = tuple(sorted(kern.vertex_map[v] for v in s))
            return SolveReport(True, witness, work, details)
    return SolveReport(False, None, work, details)


def nk_discrete_brute(graph: ColoredGraph, k: int) -> tuple | None:
    if k > graph.n:
        return None
    return _brute_free_set(graph, k)


# 3-bounded ---------------------------------------------------------------

def solve_3bounded(graph: ColoredGraph, tag: ClassTag) -> SolveReport:
    """Minimum individualization set for a graph with stable classes of size <= 3."""
    if tag.kind == "discrete_l":
        raise ValueError("round-bounded discreteness is not solved here")
    witness, breakdown = threebounded.minimum_set(graph, tag.kind)
    return SolveReport(True, witness, len(breakdown),
                       {"minimum": len(witness), "components": breakdown})


def minimum_brute(graph: ColoredGraph, tag: ClassTag) -> tuple:
    """Smallest set (then lexicographically first) by exhaustive search."""
    for size in range(graph.n + 1):
        s = k_class_brute(graph, size, tag)
        if s is not None:
            return s
    raise AssertionError("individualizing everything is always discrete")
