"""Simple undirected graphs on vertices ``0..n-1`` and domination primitives.

Graphs are immutable. Vertex sets are exchanged as ``frozenset[int]``; the
search routines work on integer bitmasks internally.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

VertexSet = frozenset


class GraphError(ValueError):
    """Invalid graph input (bad vertex, missing edge, empty graph...)."""


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphError("graph must have at least one vertex")
        if len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        for v, nbrs in enumerate(self.adj):
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise GraphError(f"neighbor {u} of {v} out of range")
                if u == v:
                    raise GraphError(f"self-loop at {v}")
                if v not in self.adj[u]:
                    raise GraphError(f"asymmetric adjacency {v}->{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 1:
            raise GraphError("graph must have at least one vertex")
        rows: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            rows[u].add(v)
            rows[v].add(u)
        return cls(n, tuple(frozenset(r) for r in rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls.from_edges(n, ())

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_edges(n, combinations(range(n), 2))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise GraphError("cycle needs at least 3 vertices")
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        return cls.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u in range(self.n) for v in self.adj[u] if u < v)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    @property
    def min_degree(self) -> int:
        return min(self.degrees())

    @property
    def max_degree(self) -> int:
        return max(self.degrees())

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self.adj[u]

    def check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise GraphError(f"vertex {v!r} not in graph with n={self.n}")

    def closed_masks(self) -> list[int]:
        """Closed neighborhoods as bitmasks, indexed by vertex."""
        return [_mask(self.adj[v]) | (1 << v) for v in range(self.n)]

    def universal_vertices(self) -> frozenset[int]:
        return frozenset(v for v in range(self.n) if len(self.adj[v]) == self.n - 1)

    def is_regular(self) -> bool:
        return self.min_degree == self.max_degree

    def __str__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def closed_neighborhood(g: Graph, v: int) -> frozenset[int]:
    g.check_vertex(v)
    return g.adj[v] | {v}


def _check_subset(g: Graph, s: Iterable[int]) -> frozenset[int]:
    s = frozenset(s)
    for v in s:
        g.check_vertex(v)
    return s


def is_dominating(g: Graph, s: Iterable[int]) -> bool:
    sm = _mask(_check_subset(g, s))
    return all(nm & sm for nm in g.closed_masks())


def domination_number(g: Graph) -> int:
    """Exact domination number by branch and bound.

    Branches on the candidates dominating the most constrained undominated
    vertex, candidates tried by descending degree; a greedy dominating set
    seeds the upper bound.
    """
    n = g.n
    closed = g.closed_masks()
    full = (1 << n) - 1
    order = sorted(range(n), key=lambda u: (-g.degree(u), u))
    rank = {u: i for i, u in enumerate(order)}
    max_cover = g.max_degree + 1

    # greedy upper bound
    dominated, greedy = 0, 0
    while dominated != full:
        best = max(order, key=lambda u: ((closed[u] & ~dominated).bit_count(), -rank[u]))
        dominated |= closed[best]
        greedy += 1
    best_size = greedy

    def search(dominated: int, size: int) -> None:
        nonlocal best_size
        if dominated == full:
            best_size = min(best_size, size)
            return
        remaining = (full & ~dominated).bit_count()
        if size + -(-remaining // max_cover) >= best_size:
            return
        cands = None
        for x in _members(full & ~dominated):
            c = _members(closed[x])
            if cands is None or len(c) < len(cands):
                cands = c
        for u in sorted(cands, key=rank.__getitem__):
            search(dominated | closed[u], size + 1)

    search(0, 0)
    return best_size


def has_domatic_partition(g: Graph, k: int) -> list[frozenset[int]] | None:
    """Partition V(g) into ``k`` dominating sets, or ``None`` if impossible."""
    n = g.n
    if k < 1:
        raise GraphError("k must be positive")
    if k == 1:
        return [frozenset(range(n))]
    if k > g.min_degree + 1:
        return None
    closed = g.closed_masks()
    classes = [0] * k

    def feasible(unassigned: int) -> bool:
        for nm in closed:
            for cm in classes:
                if not nm & (cm | unassigned):
                    return False
        return True

    def place(i: int, used: int, unassigned: int) -> bool:
        if i == n:
            return True
        unassigned &= ~(1 << i)
        for c in range(min(used + 1, k)):
            classes[c] |= 1 << i
            if feasible(unassigned) and place(i + 1, max(used, c + 1), unassigned):
                return True
            classes[c] &= ~(1 << i)
        return False

    if not place(0, 0, (1 << n) - 1):
        return None
    return [frozenset(_members(cm)) for cm in classes]


def domatic_number(g: Graph) -> int:
    for k in range(g.min_degree + 1, 1, -1):
        if has_domatic_partition(g, k) is not None:
            return k
    return 1


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    if not g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    adj = list(g.adj)
    adj[u] = adj[u] - {v}
    adj[v] = adj[v] - {u}
    return Graph(g.n, tuple(adj))


def delete_vertex(g: Graph, v: int) -> Graph:
    g.check_vertex(v)
    if g.n < 2:
        raise GraphError("cannot delete the last vertex")
    relabel = {u: (u if u < v else u - 1) for u in range(g.n) if u != v}
    return Graph.from_edges(
        g.n - 1, ((relabel[a], relabel[b]) for a, b in g.edges() if v not in (a, b))
    )


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced on ``keep`` (renumbered in ascending order) and the
    list mapping new vertex ids back to old ones."""
    old = sorted(_check_subset(g, keep))
    if not old:
        raise GraphError("induced subgraph would be empty")
    new = {u: i for i, u in enumerate(old)}
    edges = ((new[a], new[b]) for a, b in g.edges() if a in new and b in new)
    return Graph.from_edges(len(old), edges), old


def disjoint_union(*graphs: Graph) -> Graph:
    if not graphs:
        raise GraphError("disjoint_union needs at least one graph")
    edges, offset = [], 0
    for h in graphs:
        edges.extend((a + offset, b + offset) for a, b in h.edges())
        offset += h.n
    return Graph.from_edges(offset, edges)


@dataclass(frozen=True)
class GlueLayout:
    """Result of gluing ``k`` onto ``h``: vertex maps into the union."""

    graph: Graph
    h_map: tuple[int, ...]
    k_map: tuple[int, ...]
    shared: frozenset[int]


def glue_layout(h: Graph, k: Graph, identification: Mapping[int, int]) -> GlueLayout:
    """Union of ``h`` and ``k`` where vertex ``a`` of ``k`` is identified with
    vertex ``identification[a]`` of ``h``. Edge sets are merged."""
    targets = list(identification.values())
    if len(set(targets)) != len(targets):
        raise GraphError("identification is not injective")
    for a, b in identification.items():
        k.check_vertex(a)
        h.check_vertex(b)
    k_map, nxt = [], h.n
    for a in range(k.n):
        if a in identification:
            k_map.append(identification[a])
        else:
            k_map.append(nxt)
            nxt += 1
    edges = h.edges() + [(k_map[a], k_map[b]) for a, b in k.edges()]
    union = Graph.from_edges(nxt, edges)
    return GlueLayout(union, tuple(range(h.n)), tuple(k_map), frozenset(targets))


def glue(h: Graph, k: Graph, identification: Mapping[int, int]) -> tuple[Graph, frozenset[int]]:
    lay = glue_layout(h, k, identification)
    return lay.graph, lay.shared


def has_two_pendant_gadget(g: Graph) -> bool:
    return any(sum(1 for u in g.adj[v] if g.degree(u) == 1) >= 2 for v in range(g.n))


def has_adjacent_degree2_pair(g: Graph) -> bool:
    return any(g.degree(u) == 2 and g.degree(v) == 2 for u, v in g.edges())


def has_separated_degree2_pair(g: Graph) -> bool:
    """Adjacent degree-2 vertices ``u, v`` whose other neighbors differ, i.e.
    ``u v`` is the middle edge of a P4 or C4 path ``x u v y``."""
    for u, v in g.edges():
        if g.degree(u) == 2 and g.degree(v) == 2:
            (x,) = g.adj[u] - {v}
            (y,) = g.adj[v] - {u}
            if x != y:
                return True
    return False
