"""Incremental construction of colored graphs from gadgets."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..graph import ColoredGraph, GraphError, validate


class ReductionError(ValueError):
    pass


@dataclass
class GraphBuilder:
    n: int = 0
    colors: list = field(default_factory=list)
    edges: set = field(default_factory=set)
    num_classes: int = 0
    # (gadget name, arguments, class ids it created)
    manifest: list = field(default_factory=list)

    def new_class(self, size: int) -> tuple[int, ...]:
        """Fresh vertices forming a fresh color class."""
        c = self.num_classes
        self.num_classes += 1
        vs = tuple(range(self.n, self.n + size))
        self.n += size
        self.colors.extend([c] * size)
        return vs

    def pair(self) -> tuple[int, int]:
        return self.new_class(2)

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise GraphError(f"self-loop at {u}")
        e = (u, v) if u < v else (v, u)
        if e in self.edges:
            raise GraphError(f"duplicate edge {e}")
        self.edges.add(e)

    def build(self) -> ColoredGraph:
        g = ColoredGraph(self.n, frozenset(self.edges), tuple(self.colors))
        validate(g)
        return g


def cfi_gadget(b: GraphBuilder, pi, pj, pk) -> tuple:
    """Four inner vertices f_bc joined to side b of pi, side c of pj and
    side b xor c of pk.  Side 0 is the first vertex of a pair."""
    if len({tuple(pi), tuple(pj), tuple(pk)}) < 3:
        raise ReductionError("a pair is used twice inside one gadget")
    inner = b.new_class(4)
    for idx, f in enumerate(inner):
        x, y = idx >> 1, idx & 1
        b.add_edge(f, pi[x])
        b.add_edge(f, pj[y])
        b.add_edge(f, pk[x ^ y])
    b.manifest.append(("cfi", (tuple(pi), tuple(pj), tuple(pk)), (b.colors[inner[0]],)))
    return inner


def imp_gadget(b: GraphBuilder, pi, pk) -> tuple:
    """Two pairs matched to pi feeding a CFI gadget into pk."""
    if tuple(pi) == tuple(pk):
        raise ReductionError("a pair is used twice inside one gadget")
    f1 = b.pair()
    f2 = b.pair()
    for side in (0, 1):
        b.add_edge(f1[side], pi[side])
        b.add_edge(f2[side], pi[side])
    inner = cfi_gadget(b, f1, f2, pk)
    b.manifest.pop()
    b.manifest.append(("imp", (tuple(pi), tuple(pk)),
                       (b.colors[f1[0]], b.colors[f2[0]], b.colors[inner[0]])))
    return f1, f2, inner
