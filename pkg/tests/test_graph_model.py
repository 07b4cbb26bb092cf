import itertools

import pytest
from hypothesis import given

from fixref.graph import (ColoredGraph, Coloring, GraphError, bipartite_complement,
                          twin_classes, validate)

from conftest import graphs


def test_triangle_is_valid():
    validate(ColoredGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)]))


def test_self_loop_rejected():
    with pytest.raises(GraphError, match="self-loop"):
        validate(ColoredGraph(1, frozenset({(0, 0)}), (0,)))


def test_color_gap_rejected():
    with pytest.raises(GraphError, match="color gap"):
        validate(ColoredGraph(2, frozenset(), (0, 2)))


def test_dangling_endpoint_rejected():
    with pytest.raises(GraphError, match="outside"):
        validate(ColoredGraph(2, frozenset({(0, 5)}), (0, 0)))


def test_duplicate_edge_rejected():
    with pytest.raises(GraphError, match="duplicate"):
        ColoredGraph.from_edges(2, [(0, 1), (1, 0)])


def cells(col: Coloring):
    return sorted(sorted(c) for c in col.cells)


def test_twins_of_k4():
    k4 = ColoredGraph.from_edges(4, itertools.combinations(range(4), 2))
    assert cells(twin_classes(k4)) == [[0, 1, 2, 3]]


def test_twins_of_path():
    assert cells(twin_classes(ColoredGraph.from_edges(3, [(0, 1), (1, 2)]))) == [[0, 2], [1]]


def test_twins_of_colored_star():
    star = ColoredGraph.from_edges(4, [(0, 1), (0, 2), (0, 3)], [1, 0, 0, 0])
    assert cells(twin_classes(star)) == [[0], [1, 2, 3]]


def _twins(g, u, v):
    return g.colors[u] == g.colors[v] and g.adj_sets[u] - {v} == g.adj_sets[v] - {u}


@given(graphs())
def test_twin_classes_match_pairwise_relation(g):
    col = twin_classes(g)
    for u in range(g.n):
        for v in range(g.n):
            assert (col.cell_of[u] == col.cell_of[v]) == (u == v or _twins(g, u, v))


@given(graphs())
def test_twin_classes_refine_colors(g):
    for c in twin_classes(g).cells:
        assert len({g.colors[v] for v in c}) == 1


def test_matching_complement_is_crossed_matching():
    g = ColoredGraph.from_edges(4, [(0, 2), (1, 3)], [0, 0, 1, 1])
    assert bipartite_complement(g, [0, 1], [2, 3]).edges == {(0, 3), (1, 2)}


def test_complement_of_empty_is_complete_bipartite():
    g = ColoredGraph.from_edges(4)
    assert bipartite_complement(g, [0, 1], [2, 3]).m == 4


def test_overlapping_cells_rejected():
    with pytest.raises(GraphError):
        bipartite_complement(ColoredGraph.from_edges(3), [0, 1], [1, 2])


@given(graphs())
def test_bipartite_complement_is_involution(g):
    a = list(range(0, g.n, 2))
    b = list(range(1, g.n, 2))
    h = bipartite_complement(g, a, b)
    assert h.n == g.n and h.colors == g.colors
    assert bipartite_complement(h, a, b) == g
