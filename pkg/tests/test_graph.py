import pytest
from hypothesis import given

import oracle
from conftest import CORPUS4, graphs
from domgame.graph import (Graph, GraphError, closed_neighborhood, delete_edge, delete_vertex,
                           disjoint_union, domatic_number, domination_number, glue,
                           glue_layout, has_adjacent_degree2_pair, has_domatic_partition,
                           has_separated_degree2_pair, has_two_pendant_gadget, induced_subgraph,
                           is_dominating)

K = Graph.complete
P = Graph.path
C = Graph.cycle


def test_construction_rejects_bad_input():
    with pytest.raises(GraphError):
        Graph.from_edges(0, [])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])


@given(graphs())
def test_adjacency_symmetric_loopless(g):
    for v in range(g.n):
        assert v not in g.adj[v]
        for u in g.adj[v]:
            assert v in g.adj[u]


def test_closed_neighborhood():
    assert closed_neighborhood(K(3), 0) == {0, 1, 2}
    assert closed_neighborhood(P(4), 0) == {0, 1}
    assert closed_neighborhood(C(6), 2) == {1, 2, 3}
    with pytest.raises(GraphError):
        closed_neighborhood(K(3), 3)


def test_is_dominating():
    assert is_dominating(K(4), {0})
    assert not is_dominating(C(4), {0})
    assert is_dominating(C(6), {0, 3})
    with pytest.raises(GraphError):
        is_dominating(K(2), {5})


def test_domination_number():
    assert domination_number(K(5)) == 1
    assert domination_number(C(6)) == 2
    assert domination_number(P(4)) == 2


def test_domatic_number():
    assert domatic_number(K(4)) == 4
    # {0,3}, {1,4}, {2,5} all dominate C6
    assert domatic_number(C(6)) == 3
    assert domatic_number(Graph.from_edges(3, [(0, 1)])) == 1


def test_domatic_partition_is_a_certificate():
    parts = has_domatic_partition(C(6), 3)
    assert parts is not None and len(parts) == 3
    assert all(is_dominating(C(6), p) for p in parts)
    assert has_domatic_partition(C(6), 4) is None
    assert has_domatic_partition(C(5), 3) is None


@pytest.mark.parametrize("g", CORPUS4 + [C(5), P(5), Graph.star(4)], ids=str)
def test_domination_and_domatic_match_oracle(g):
    assert domination_number(g) == oracle.domination_number(g.n, g.edges())
    assert domatic_number(g) == oracle.domatic_number(g.n, g.edges())


@given(graphs(max_n=6))
def test_domatic_chain(g):
    assert 1 <= domatic_number(g) <= g.min_degree + 1


def test_delete_edge():
    h = delete_edge(K(3), 0, 1)
    assert h.edges() == [(0, 2), (1, 2)]
    assert delete_edge(C(4), 0, 1).edges() == [(0, 3), (1, 2), (2, 3)]
    assert delete_edge(P(2), 0, 1).m == 0
    with pytest.raises(GraphError):
        delete_edge(P(3), 0, 2)


def test_delete_vertex():
    assert delete_vertex(K(4), 2) == K(3)
    assert delete_vertex(Graph.star(3), 0).m == 0
    h = delete_vertex(P(4), 1)
    assert h.n == 3 and h.edges() == [(1, 2)]
    with pytest.raises(GraphError):
        delete_vertex(K(1), 0)


def test_disjoint_union():
    g = disjoint_union(K(2), K(2))
    assert (g.n, g.m) == (4, 2)
    assert disjoint_union(K(1), K(1)).m == 0
    g = disjoint_union(K(3), K(3), K(3))
    assert (g.n, g.m) == (9, 9)


def test_induced_subgraph():
    h, ids = induced_subgraph(C(5), [0, 1, 2])
    assert ids == [0, 1, 2] and h == P(3)


def test_glue():
    g, shared = glue(K(3), K(3), {0: 2})
    assert (g.n, g.m) == (5, 6) and shared == {2}
    g, shared = glue(K(3), P(3), {0: 0, 1: 1, 2: 2})
    assert g == K(3) and shared == {0, 1, 2}
    # P4 leaves onto adjacent C4 vertices
    lay = glue_layout(C(4), P(4), {0: 0, 3: 1})
    assert (lay.graph.n, lay.graph.m) == (6, 7)
    assert lay.k_map == (0, 4, 5, 1)
    with pytest.raises(GraphError):
        glue(K(3), K(3), {0: 1, 1: 1})


def test_gadget_detectors():
    assert has_two_pendant_gadget(Graph.star(3))
    assert not has_two_pendant_gadget(P(4))
    g = Graph.from_edges(6, [(a, b) for a in range(4) for b in range(a + 1, 4)] + [(0, 4), (0, 5)])
    assert has_two_pendant_gadget(g)
    assert has_adjacent_degree2_pair(C(6))
    assert not has_adjacent_degree2_pair(K(4))
    assert has_adjacent_degree2_pair(P(4))
    assert has_separated_degree2_pair(P(4))
    assert not has_separated_degree2_pair(K(3))
    assert has_adjacent_degree2_pair(K(3))
