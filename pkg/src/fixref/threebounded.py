"""Exact individualization minima for graphs whose stable classes have at
most three vertices.

After normalization every class is independent and two classes of equal
size are joined by a perfect matching or not at all.  Classes joined by
paths form linked components, which are solved one at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import ColoredGraph, GraphError, _edge
from .refinement import stable_partition


class NotBoundedError(GraphError):
    pass


@dataclass
class Normalized:
    graph: ColoredGraph          # recolored by stable classes, sparse side kept
    classes: tuple               # stable cells
    # ("within", cell) or ("between", cell_a, cell_b), in application order
    transcript: list = field(default_factory=list)


@dataclass
class LinkedComponent:
    classes: tuple               # stable cells in this component
    class_size: int
    vertices: tuple
    parts: tuple                 # connected components (vertex tuples)
    aut_order: int
    forest: bool

    def minimum(self, kind: str) -> tuple:
        """(value, witness) for one of discrete/rigid/amenable/compact/refinable."""
        first = self.classes[0]
        if self.class_size == 1:
            return 0, ()
        if self.class_size == 2:
            table = {"discrete": 1, "rigid": 1, "amenable": 0 if self.forest else 1,
                     "compact": 0, "refinable": 0}
            v = table[kind]
            return v, (first[0],) if v else ()
        a = self.aut_order
        if a == 6:
            table = {"discrete": 2, "rigid": 2, "amenable": 0 if self.forest else 2,
                     "compact": 0, "refinable": 0}
            v = table[kind]
            return v, tuple(first[:2]) if v else ()
        if a == 3:
            v = 0 if kind in ("compact", "refinable") else 1
            return v, (first[0],) if v else ()
        if a == 2:
            larger = max(self.parts, key=lambda p: (len(p), -p[0]))
            return 1, (min(larger),)
        if a == 1:
            v = 0 if kind == "rigid" else 1
            return v, (self.vertices[0],) if v else ()
        raise AssertionError(f"unexpected automorphism count {a}")

    @property
    def compact(self) -> bool:
        return self.class_size < 3 or self.aut_order in (6, 3)


def normalize(graph: ColoredGraph) -> Normalized:
    part = stable_partition(graph)
    cells = part.cells
    if any(len(c) > 3 for c in cells):
        raise NotBoundedError("a stable class has more than 3 vertices")
    edges = set(graph.edges)
    transcript = []
    cell_of = part.cell_of
    counts: dict = {}
    for u, v in graph.edges:
        key = tuple(sorted((cell_of[u], cell_of[v])))
        counts[key] = counts.get(key, 0) + 1
    for (a, b), cnt in sorted(counts.items()):
        ca, cb = cells[a], cells[b]
        if a == b:
            # a stable class of size <= 3 is empty or complete inside
            pairs = [(u, v) for i, u in enumerate(ca) for v in ca[i + 1:]]
            transcript.append(("within", ca))
        else:
            if 2 * cnt <= len(ca) * len(cb):
                continue
            pairs = [(u, v) for u in ca for v in cb]
            transcript.append(("between", ca, cb))
        for u, v in pairs:
            edges ^= {_edge(u, v)}
    g = ColoredGraph(graph.n, frozenset(edges), tuple(cell_of))
    return Normalized(g, cells, transcript)


def linked_components(graph: ColoredGraph) -> list[LinkedComponent]:
    from .autsearch import automorphism_group

    norm = normalize(graph)
    g = norm.graph
    cells = norm.classes
    cell_of = g.colors
    parent = list(range(len(cells)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        a, b = find(cell_of[u]), find(cell_of[v])
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict = {}
    for i in range(len(cells)):
        groups.setdefault(find(i), []).append(cells[i])
    out = []
    for root in sorted(groups):
        classes = tuple(groups[root])
        sizes = {len(c) for c in classes}
        if len(sizes) != 1:
            raise AssertionError("linked classes of different sizes")
        verts = tuple(sorted(v for c in classes for v in c))
        sub, _ = g.induced(verts)
        parts = _connected_parts(sub, verts)
        forest = sub.m == len(verts) - len(parts)
        order = automorphism_group(sub).order()
        out.append(LinkedComponent(classes, sizes.pop(), verts, parts, order, forest))
    return out


def _connected_parts(sub: ColoredGraph, names) -> tuple:
    seen = [False] * sub.n
    parts = []
    for s in range(sub.n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            x = stack.pop()
            comp.append(names[x])
            for y in sub.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        parts.append(tuple(sorted(comp)))
    return tuple(sorted(parts))


def is_amenable_3bounded(graph: ColoredGraph) -> bool:
    return all(c.forest for c in linked_components(graph))


def is_compact_3bounded(graph: ColoredGraph) -> bool:
    return all(c.compact for c in linked_components(graph))


KINDS = ("discrete", "rigid", "amenable", "compact", "refinable")


def minimum_set(graph: ColoredGraph, kind: str) -> tuple[tuple, list]:
    """Minimum individualization set and the per-component breakdown."""
    if kind not in KINDS:
        raise ValueError(f"unsupported class {kind!r} for 3-bounded solving")
    witness = []
    breakdown = []
    for comp in linked_components(graph):
        value, w = comp.minimum(kind)
        witness.extend(w)
        breakdown.append({"class_size": comp.class_size, "aut_order": comp.aut_order,
                          "forest": comp.forest, "value": value,
                          "vertices": list(comp.vertices)})
    return tuple(sorted(witness)), breakdown
