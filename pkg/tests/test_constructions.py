from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from domgame.constructions import (canonical_code, clique_tree_cliques, enumerate_corpus,
                                   gen_clique_tree, gen_disjoint_cliques, gen_k4_pendant,
                                   gen_matching, gen_tree_graph, gen_two_pendant, gen_zelinka,
                                   graph_from_code, isomorphism_classes, parse_corpus_spec,
                                   zelinka_order)
from domgame.game import Player
from domgame.graph import Graph, GraphError, domatic_number, is_dominating
from domgame.solver import game_number

A, B = Player.A, Player.B


def check_zelinka(lay, n):
    g, k = lay.graph, lay.k
    assert g.n == n
    assert len(lay.s_vertices) == 2 * (k + 2)
    assert len(lay.t_vertices) == len(lay.t_subsets)
    for tv, sub in zip(lay.t_vertices, lay.t_subsets):
        assert g.adj[tv] == sub
    for u in lay.u_vertices:
        assert g.adj[u] == frozenset(range(k))
    for a, b in combinations(lay.s_vertices, 2):
        assert not g.has_edge(a, b)
    assert g.min_degree == k


def test_zelinka_orders():
    assert [zelinka_order(k) for k in (2, 3, 4)] == [36, 130, 507]


def test_zelinka_examples():
    lay = gen_zelinka(36)
    assert (lay.k, len(lay.s_vertices), len(lay.t_vertices), len(lay.u_vertices)) == (2, 8, 28, 0)
    check_zelinka(lay, 36)
    lay = gen_zelinka(134)
    assert (lay.k, len(lay.s_vertices), len(lay.t_vertices), len(lay.u_vertices)) == (3, 10, 120, 4)
    assert list(lay.t_subsets) == sorted(lay.t_subsets, key=sorted)
    with pytest.raises(GraphError):
        gen_zelinka(35)


@pytest.mark.parametrize("n", range(36, 201, 7))
def test_zelinka_degree_facts(n):
    check_zelinka(gen_zelinka(n), n)


def test_two_pendant():
    assert gen_two_pendant(3) == Graph.star(2)
    g = gen_two_pendant(6)
    assert sorted(g.degrees()) == [1, 1, 3, 3, 3, 5]
    with pytest.raises(GraphError):
        gen_two_pendant(2)


def test_tree_graph():
    assert gen_tree_graph(1).graph == Graph.complete(1)
    assert gen_tree_graph(2).graph == Graph.star(2)
    lay = gen_tree_graph(3)
    assert lay.graph.n == 7 and domatic_number(lay.graph) >= 3
    assert lay.children(0) == [1, 2] and lay.ancestors(6) == [2, 0]
    assert lay.subtree(1) == [1, 3, 4] and lay.level(2) == [3, 4, 5, 6]
    double = gen_tree_graph(3, copies=2)
    assert double.graph.n == 14 and double.offsets == (0, 7)


@pytest.mark.parametrize("k", range(1, 6))
def test_tree_depth_classes_dominate(k):
    lay = gen_tree_graph(k)
    for d in range(k):
        assert is_dominating(lay.graph, lay.level(d))


def test_matching_and_cliques():
    assert gen_matching(1) == Graph.complete(2)
    assert gen_matching(3).n == 6 and gen_matching(3).m == 3
    g = gen_disjoint_cliques(3, 3)
    assert (g.n, g.m) == (9, 9)
    assert gen_disjoint_cliques(1, 5) == Graph.complete(5)
    assert gen_disjoint_cliques(2, 1) == Graph.empty(2)


def test_clique_tree():
    g = gen_clique_tree(1, 2)
    assert (g.n, g.m) == (5, 6)
    assert gen_clique_tree(1, 3).n == 7
    assert clique_tree_cliques(1, 3) == [[0, 1, 2], [2, 3, 4], [4, 5, 6]]
    star = gen_clique_tree(1, 3, [0, 0])
    assert star.degree(0) == 6
    with pytest.raises(GraphError):
        gen_clique_tree(1, 3, [0, 9])
    with pytest.raises(GraphError):
        gen_clique_tree(1, 3, [0])


@pytest.mark.parametrize("att", [None, [0], [1], [2]])
def test_clique_tree_game_number(att):
    s = 2 if att is not None else 3
    g = gen_clique_tree(1, s, att)
    assert game_number(g, A) == 2


def test_k4_pendant():
    h = gen_k4_pendant()
    assert sorted(h.degrees(), reverse=True) == [4, 3, 3, 3, 1]


def test_corpus_counts():
    assert len(isomorphism_classes(3)) == 4
    assert len(isomorphism_classes(4)) == 11
    assert len(isomorphism_classes(5)) == 34
    assert len(list(enumerate_corpus(4))) == 18
    assert len([g for g in enumerate_corpus(4, dedupe=False) if g.n == 4]) == 64
    with pytest.raises(GraphError):
        list(enumerate_corpus(8))


@given(graphs(max_n=6), st.permutations(range(6)))
def test_canonical_code_is_invariant(g, perm):
    perm = [p for p in perm if p < g.n]
    h = Graph.from_edges(g.n, ((perm[u], perm[v]) for u, v in g.edges()))
    assert canonical_code(g) == canonical_code(h)
    assert canonical_code(graph_from_code(g.n, canonical_code(g))) == canonical_code(g)


def test_parse_corpus_spec():
    assert parse_corpus_spec("n<=4") == (1, 4)
    assert parse_corpus_spec("n=5") == (5, 5)
    assert parse_corpus_spec("3..5") == (3, 5)
    assert parse_corpus_spec("4") == (1, 4)
    with pytest.raises(GraphError):
        parse_corpus_spec("n<=x")


@given(st.integers(1, 6), st.integers(1, 4))
def test_generators_respect_graph_invariants(a, b):
    for g in (gen_disjoint_cliques(a, b), gen_matching(a), gen_clique_tree(min(a, 2), b),
              gen_tree_graph(min(a, 4), b).graph):
        for v in range(g.n):
            assert v not in g.adj[v] and all(v in g.adj[u] for u in g.adj[v])
