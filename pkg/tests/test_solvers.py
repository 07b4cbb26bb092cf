import itertools
import random

import pytest
from hypothesis import given, settings

from conftest import graphs, random_graph
from fixref.autsearch import automorphism_group_brute
from fixref.graph import ColoredGraph, twin_classes
from fixref.refinement import individualize, refine_rounds, stable_coloring
from fixref.solvers import (DISCRETE, REFINABLE, RIGID, ClassTag, discrete_l,
                            is_refinable, k_class_brute, k_class_search,
                            k_color_valence, kernelize_nk_discrete, membership,
                            nk_discrete_brute, nk_discrete_solve, parse_tag,
                            reduce_twins, twin_free_free_set)

C4 = ColoredGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
K2 = ColoredGraph.from_edges(2, [(0, 1)])


def complete(n):
    return ColoredGraph.from_edges(n, itertools.combinations(range(n), 2))


def naive_discrete(g):
    return len(stable_coloring(g).stable.cells) == g.n


def naive_refinable(g):
    cells = {frozenset(c) for c in stable_coloring(g).stable.cells}
    auts = automorphism_group_brute(g)
    orbits = {frozenset(a[v] for a in auts) for v in range(g.n)}
    return cells == orbits


def naive_nk(g, k):
    for free in itertools.combinations(range(g.n), k):
        if naive_discrete(individualize(g, [v for v in range(g.n) if v not in free])):
            return free
    return None


# tags and membership ---------------------------------------------------

def test_tag_parsing():
    assert parse_tag("discrete") == DISCRETE
    assert parse_tag("discrete-l", 2) == discrete_l(2)
    with pytest.raises(ValueError):
        parse_tag("discrete-l")
    with pytest.raises(ValueError):
        ClassTag("bogus")
    with pytest.raises(ValueError):
        ClassTag("discrete", 3)


def test_refinable_examples():
    assert is_refinable(C4)
    assert is_refinable(ColoredGraph.from_edges(3, [(0, 1)], [0, 1, 2]))
    # triangle plus path: refinement separates the cycle, the path middle
    # and the path ends, which are exactly the orbits
    tri_path = ColoredGraph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5)])
    assert is_refinable(tri_path) and naive_refinable(tri_path)
    # triangle plus square: one stable class, two orbits
    tri_sq = ColoredGraph.from_edges(7, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6), (3, 6)])
    assert not is_refinable(tri_sq) and not naive_refinable(tri_sq)


def test_membership_examples():
    single = ColoredGraph.from_edges(1, [])
    for kind in ("discrete", "amenable", "compact", "refinable", "rigid"):
        assert membership(single, ClassTag(kind))
    assert membership(single, discrete_l(0))
    assert not membership(K2, RIGID)
    assert membership(K2, REFINABLE)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=7))
def test_membership_against_naive_oracles(g):
    assert membership(g, DISCRETE) == naive_discrete(g)
    assert membership(g, REFINABLE) == naive_refinable(g)
    assert membership(g, RIGID) == (len(automorphism_group_brute(g)) == 1)
    for l in range(3):
        assert membership(g, discrete_l(l)) == (len(refine_rounds(g, l).cells) == g.n)


# k-subset search -------------------------------------------------------

def test_search_examples():
    path = ColoredGraph.from_edges(3, [(0, 1), (1, 2)], [0, 1, 2])
    assert k_class_search(path, 0, DISCRETE).witness == ()
    assert not k_class_search(C4, 1, DISCRETE).answer
    rep = k_class_search(C4, 2, DISCRETE)
    assert rep.answer and rep.witness == (0, 1)


def test_search_rejects_negative_k():
    with pytest.raises(ValueError):
        k_class_search(C4, -1, DISCRETE)
    assert not k_class_search(C4, 5, DISCRETE).answer


def test_search_matches_brute_force():
    rng = random.Random(5)
    tags = (DISCRETE, REFINABLE, RIGID, discrete_l(1), discrete_l(2))
    for _ in range(150):
        g = random_graph(rng, rng.randint(1, 9), rng.random(), rng.randint(1, 2))
        k = rng.randint(0, 3)
        for tag in tags:
            rep = k_class_search(g, k, tag)
            assert rep.witness == k_class_brute(g, k, tag)
            if rep.answer:
                assert membership(individualize(g, rep.witness), tag)


def test_search_independent_of_workers():
    rng = random.Random(17)
    cases = [random_graph(rng, 8, 0.4) for _ in range(4)]
    cases.append(ColoredGraph.from_edges(3, [(0, 1)], [0, 1, 2]))
    for g in cases:
        for k in (1, 2):
            assert k_class_search(g, k, DISCRETE, jobs=2).witness == \
                k_class_search(g, k, DISCRETE).witness


def test_search_agrees_with_nk_discrete():
    rng = random.Random(23)
    for _ in range(80):
        g = random_graph(rng, rng.randint(1, 10), rng.random(), rng.randint(1, 2))
        k = rng.randint(0, g.n)
        forward = k_class_search(g, g.n - k, DISCRETE).answer
        assert forward == nk_discrete_solve(g, k).answer


# color valence ---------------------------------------------------------

def test_color_valence_examples():
    assert k_color_valence(ColoredGraph.from_edges(4, []), 0, 0).answer
    assert k_color_valence(C4, 0, 2).answer
    assert not k_color_valence(C4, 0, 1).answer
    with pytest.raises(ValueError):
        k_color_valence(C4, 0, -1)


# (n - k)-discrete ------------------------------------------------------

def test_nk_examples():
    for n in range(2, 6):
        rep = nk_discrete_solve(complete(n), 1)
        assert rep.answer and len(rep.witness) == 1
    assert not nk_discrete_solve(complete(4), 2).answer
    assert nk_discrete_solve(ColoredGraph.from_edges(2, []), 1).answer


def test_kernel_of_clique_is_one_vertex():
    kern = kernelize_nk_discrete(complete(5), 1)
    assert kern.graph.n == 1
    assert len(kern.removed) == 4


def test_twin_free_large_graph_gives_trivial_yes():
    # a path on 7 vertices is twin-free
    path = ColoredGraph.from_edges(7, [(i, i + 1) for i in range(6)])
    assert twin_classes(path).is_discrete()
    kern = kernelize_nk_discrete(path, 2)
    assert kern.trivial and kern.solution is not None
    free = kern.solution
    assert naive_discrete(individualize(path, [v for v in range(7) if v not in free]))


def test_small_twin_free_graph_unchanged():
    path = ColoredGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    kern = kernelize_nk_discrete(path, 2)
    assert not kern.trivial
    assert kern.graph.n == 4 and kern.graph.edges == path.edges


def test_twin_removal_is_answer_preserving_on_a_path():
    # a-b-c with k = 2: the ends are twins, yet the instance stays yes
    path = ColoredGraph.from_edges(3, [(0, 1), (1, 2)])
    rep = nk_discrete_solve(path, 2)
    assert rep.answer
    assert naive_discrete(individualize(path, [v for v in range(3) if v not in rep.witness]))
    reduced, names, removed = reduce_twins(path)
    assert reduced.n == 2 and removed == (2,)


def test_twin_free_lemma_on_random_twin_free_graphs():
    rng = random.Random(31)
    seen = 0
    while seen < 40:
        g = random_graph(rng, rng.randint(3, 12), 0.5)
        if not twin_classes(g).is_discrete():
            continue
        seen += 1
        for k in range(0, (g.n - 1) // 2 + 1):
            free = twin_free_free_set(g, k)
            assert free is not None and len(free) == k
            assert naive_discrete(individualize(g, [v for v in range(g.n) if v not in free]))


def test_kernel_size_and_answers():
    rng = random.Random(4)
    for _ in range(200):
        n = rng.randint(1, 14)
        g = random_graph(rng, n, rng.random(), rng.randint(1, 3))
        k = rng.randint(0, 4)
        kern = kernelize_nk_discrete(g, k)
        assert kern.graph.n <= max(1, 2 * k)
        rep = nk_discrete_solve(g, k)
        assert rep.answer == (nk_discrete_brute(g, k) is not None)
        if rep.answer:
            free = rep.witness
            assert len(free) == k
            assert naive_discrete(individualize(g, [v for v in range(n) if v not in free]))


def test_nk_against_naive_refinement():
    rng = random.Random(44)
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 8), rng.random(), rng.randint(1, 2))
        k = rng.randint(0, 4)
        assert nk_discrete_solve(g, k).answer == (naive_nk(g, k) is not None)
