import random

import pytest
from hypothesis import given

from fixref.autsearch import automorphism_group
from fixref.graph import ColoredGraph, Coloring, GraphError
from fixref.refinement import (color_valence, individualize, is_discrete, is_discrete_within,
                               refine_rounds, refine_step, stable_coloring, stable_partition)

from conftest import graphs, random_graph

P3 = ColoredGraph.from_edges(3, [(0, 1), (1, 2)])
C4 = ColoredGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def part(col):
    return sorted(sorted(c) for c in col.cells)


def test_step_splits_path_by_degree():
    assert part(refine_step(P3, Coloring.of_graph(P3))) == [[0, 2], [1]]


def test_step_keeps_regular_cycle():
    assert part(refine_step(C4, Coloring.of_graph(C4))) == [[0, 1, 2, 3]]


def test_step_on_cycle_with_individualized_vertex():
    g = individualize(C4, [0])
    assert part(refine_step(g, Coloring.of_graph(g))) == [[0], [1, 3], [2]]


def test_step_rejects_short_coloring():
    with pytest.raises(GraphError):
        refine_step(P3, Coloring.from_labels([0, 0]))


def test_step_cell_order_follows_parent_then_signature():
    g = ColoredGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)], [1, 0, 0, 1])
    out = refine_step(g, Coloring.of_graph(g))
    # cell 0 = {1, 2}, cell 1 = {0, 3}; nothing splits, order kept
    assert [sorted(c) for c in out.cells] == [[1, 2], [0, 3]]


def test_discrete_input_stabilizes_after_one_round():
    g = ColoredGraph.from_edges(3, [(0, 1)], [0, 1, 2])
    trace = stable_coloring(g)
    assert trace.stabilized_at == 1
    assert trace.stable.is_discrete()


def test_path_of_five_stable_cells():
    g = ColoredGraph.from_edges(5, [(i, i + 1) for i in range(4)])
    assert part(stable_coloring(g).stable) == [[0, 4], [1, 3], [2]]


def test_cycle_with_individualized_vertex_stable():
    assert part(stable_coloring(individualize(C4, [0])).stable) == [[0], [1, 3], [2]]


def test_rounds_zero_is_input():
    assert part(refine_rounds(P3, 0)) == [[0, 1, 2]]


def test_rounds_one_on_path():
    assert part(refine_rounds(P3, 1)) == [[0, 2], [1]]


def test_rounds_negative_rejected():
    with pytest.raises(ValueError):
        refine_rounds(P3, -1)


@given(graphs())
def test_enough_rounds_reach_stable(g):
    assert part(refine_rounds(g, g.n)) == part(stable_coloring(g).stable)


@given(graphs())
def test_each_round_refines_previous(g):
    rounds = stable_coloring(g).rounds
    for a, b in zip(rounds, rounds[1:]):
        assert b.refines(a)
    for l in range(4):
        assert refine_rounds(g, l + 1).refines(refine_rounds(g, l))


@given(graphs())
def test_stabilized_round_repeats_partition(g):
    trace = stable_coloring(g)
    if trace.stabilized_at >= 1:
        assert trace.rounds[trace.stabilized_at].same_partition(trace.rounds[trace.stabilized_at - 1])


def test_individualize_empty_is_identity():
    assert individualize(P3, []) == P3


def test_individualize_k2():
    g = individualize(ColoredGraph.from_edges(2, [(0, 1)]), [0])
    assert part(refine_rounds(g, 0)) == [[0], [1]]


def test_individualize_everything_is_discrete():
    assert is_discrete(individualize(C4, [0, 1, 2, 3]))


def test_individualize_appends_fresh_ids_in_order():
    g = ColoredGraph.from_edges(3, [], [0, 1, 1])
    assert individualize(g, [2, 1]).colors == (0, 2, 1)


def test_individualize_rejects_duplicates():
    with pytest.raises(GraphError):
        individualize(P3, [0, 0])


@given(graphs())
def test_individualized_vertices_end_as_singletons(g):
    s = list(range(0, g.n, 3))
    stable = stable_coloring(individualize(g, s)).stable
    for v in s:
        assert len(stable.cells[stable.cell_of[v]]) == 1


def test_path_not_discrete():
    assert not is_discrete(P3)


def test_path_with_end_individualized():
    g = individualize(P3, [0])
    assert is_discrete(g)
    assert is_discrete_within(g, 2)


def test_single_vertex_discrete_in_zero_rounds():
    assert is_discrete_within(ColoredGraph.from_edges(1), 0)


def test_valence_edgeless():
    assert color_valence(ColoredGraph.from_edges(4)) == 0


def test_valence_complete_bipartite_sides():
    g = ColoredGraph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)], [0, 0, 1, 1])
    assert color_valence(g) == 0


def test_valence_four_cycle():
    assert color_valence(C4) == 2


@given(graphs())
def test_worklist_matches_naive_stable_partition(g):
    assert part(stable_partition(g)) == part(stable_coloring(g).stable)


@given(graphs(max_n=7))
def test_worklist_matches_naive_after_individualizing(g):
    s = list(range(0, g.n, 2))
    assert part(stable_partition(g, s)) == part(stable_coloring(individualize(g, s)).stable)


def test_isomorphism_invariance():
    rng = random.Random(11)
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 10), rng.random(), rng.randint(1, 3))
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        a, b = stable_coloring(g).stable, stable_coloring(h).stable
        assert len(a) == len(b)
        for cell in a.cells:
            images = {b.cell_of[perm[v]] for v in cell}
            assert len(images) == 1 and len(b.cells[images.pop()]) == len(cell)


@given(graphs(max_n=7))
def test_automorphisms_preserve_stable_cells(g):
    stable = stable_coloring(g).stable
    for gen in automorphism_group(g).generators:
        for v in range(g.n):
            assert stable.cell_of[gen(v)] == stable.cell_of[v]
