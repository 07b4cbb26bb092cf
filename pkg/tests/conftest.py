import random

from hypothesis import strategies as st

from fixref.graph import ColoredGraph, compact_colors
from fixref.perm import PermGroup, Permutation
from fixref.reductions import GraphBuilder, cfi_gadget, imp_gadget


def random_graph(rng: random.Random, n: int, p: float = 0.5, ncolors: int = 1) -> ColoredGraph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    colors = compact_colors([rng.randrange(ncolors) for _ in range(n)])
    return ColoredGraph.from_edges(n, edges, colors)


def random_group(rng: random.Random, n: int, ngens: int) -> PermGroup:
    gens = []
    for _ in range(ngens):
        img = list(range(n))
        if rng.random() < 0.5 or n < 2:
            rng.shuffle(img)
        else:
            a, b = rng.sample(range(n), 2)
            img[a], img[b] = img[b], img[a]
        gens.append(Permutation(img))
    return PermGroup(n, gens)


@st.composite
def graphs(draw, max_n=8, max_colors=3):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    k = draw(st.integers(1, max_colors))
    cols = draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n))
    return ColoredGraph.from_edges(n, [e for e, b in zip(pairs, mask) if b], compact_colors(cols))


@st.composite
def groups(draw, max_n=8, max_gens=3):
    n = draw(st.integers(1, max_n))
    gens = draw(st.lists(st.permutations(list(range(n))), max_size=max_gens))
    return PermGroup(n, [Permutation(g) for g in gens])


def closure(group: PermGroup) -> set:
    """All elements by breadth-first multiplication (independent oracle)."""
    ident = tuple(range(group.n))
    seen = {ident}
    frontier = [ident]
    gens = [g.images for g in group.generators]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = tuple(g[a[i]] for i in range(group.n))
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def random_3bounded(rng: random.Random, n: int) -> ColoredGraph:
    """Random graph whose initial color classes have at most 3 vertices,
    so every stable class does too."""
    cols: list = []
    c = 0
    while len(cols) < n:
        cols += [c] * min(rng.randint(1, 3), n - len(cols))
        c += 1
    rng.shuffle(cols)
    p = rng.random()
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return ColoredGraph.from_edges(n, edges, compact_colors(cols))


def triples(num_classes: int, matchings) -> ColoredGraph:
    """Classes {3c, 3c+1, 3c+2}; each (a, b, perm) joins 3a+i to 3b+perm[i]."""
    edges = [(3 * a + i, 3 * b + p[i]) for a, b, p in matchings for i in range(3)]
    return ColoredGraph.from_edges(3 * num_classes, edges,
                                   [v // 3 for v in range(3 * num_classes)])


_ID = (0, 1, 2)
# One linked component per automorphism count.  The component is a 3-fold
# cover of its class graph, and its automorphisms are the centralizer of the
# monodromy in S_3: trivial monodromy gives 6, a 3-cycle 3, a transposition 2,
# and all of S_3 (two independent cycles) gives 1.
AUT_FAMILIES = {
    6: triples(3, [(0, 1, _ID), (1, 2, _ID)]),
    3: triples(3, [(0, 1, _ID), (1, 2, _ID), (2, 0, (1, 2, 0))]),
    2: triples(3, [(0, 1, _ID), (1, 2, _ID), (2, 0, (1, 0, 2))]),
    1: triples(4, [(0, 1, _ID), (1, 2, _ID), (2, 0, (1, 2, 0)), (2, 3, _ID), (3, 0, (1, 0, 2))]),
}

# minimum individualizations per class for each family, from the case analysis
AUT_FAMILY_MINIMA = {
    6: {"discrete": 2, "rigid": 2, "refinable": 0, "compact": 0},
    3: {"discrete": 1, "rigid": 1, "refinable": 0, "compact": 0},
    2: {"discrete": 1, "rigid": 1, "refinable": 1, "compact": 1},
    1: {"discrete": 1, "rigid": 0, "refinable": 1, "compact": 1},
}


# gadget helpers -------------------------------------------------------

def flips(auts, pairs):
    return {tuple(int(a[p[0]] == p[1]) for p in pairs) for a in auts}


def split(coloring, pair):
    return coloring.cell_of[pair[0]] != coloring.cell_of[pair[1]]


def cfi_standalone():
    b = GraphBuilder()
    pi, pj, pk = b.pair(), b.pair(), b.pair()
    inner = cfi_gadget(b, pi, pj, pk)
    return b.build(), (pi, pj, pk), inner


def imp_standalone():
    b = GraphBuilder()
    pi, pk = b.pair(), b.pair()
    f1, f2, inner = imp_gadget(b, pi, pk)
    return b.build(), (pi, pk), (f1, f2, inner)


# acceptance reporting --------------------------------------------------

ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for line in sorted(ACCEPTANCE):
        terminalreporter.write_line(line[1])
