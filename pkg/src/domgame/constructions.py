"""Graph families used as witnesses, and a small-graph corpus."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Iterator, Sequence

import numpy as np

from ._kernels import graph_code
from .graph import Graph, GraphError, disjoint_union


def zelinka_order(k: int) -> int:
    """n_k = 2(k+2) + C(2(k+2), k); n_2 = 36, n_3 = 130, n_4 = 507."""
    return 2 * (k + 2) + comb(2 * (k + 2), k)


@dataclass(frozen=True)
class ZelinkaLayout:
    """Bipartite graph with S = vertices 0..2(k+2)-1 (S label s+1 is vertex s),
    one vertex per k-subset of S in lexicographic order, then the padding set U.
    Every T and U vertex has degree k."""

    k: int
    s_vertices: tuple[int, ...]
    t_vertices: tuple[int, ...]
    t_subsets: tuple[frozenset[int], ...]
    u_vertices: tuple[int, ...]
    graph: Graph


def gen_zelinka(n: int) -> ZelinkaLayout:
    if n < zelinka_order(2):
        raise GraphError(f"the construction needs n >= {zelinka_order(2)}, got {n}")
    k = 2
    while zelinka_order(k + 1) <= n:
        k += 1
    s = list(range(2 * (k + 2)))
    subsets = [frozenset(c) for c in combinations(s, k)]
    t = list(range(len(s), len(s) + len(subsets)))
    u = list(range(len(s) + len(subsets), n))
    edges = [(a, tv) for tv, sub in zip(t, subsets) for a in sorted(sub)]
    edges += [(a, uv) for uv in u for a in range(k)]
    return ZelinkaLayout(k, tuple(s), tuple(t), tuple(subsets), tuple(u), Graph.from_edges(n, edges))


def gen_two_pendant(n: int) -> Graph:
    """K_{n-2} with two pendant vertices on clique vertex 0."""
    if n < 3:
        raise GraphError("needs n >= 3")
    m = n - 2
    edges = list(combinations(range(m), 2)) + [(0, m), (0, m + 1)]
    return Graph.from_edges(n, edges)


@dataclass(frozen=True)
class TreeLayout:
    """Complete binary tree of height k-1 in heap order (root 0, children of
    v are 2v+1 and 2v+2), closed under ancestor/descendant adjacency. With
    ``copies`` > 1 the graph is a disjoint union and ``offsets`` locates
    each copy."""

    k: int
    size: int
    parent: tuple[int, ...]
    depth: tuple[int, ...]
    offsets: tuple[int, ...]
    graph: Graph

    def children(self, v: int) -> list[int]:
        return [c for c in (2 * v + 1, 2 * v + 2) if c < self.size]

    def ancestors(self, v: int) -> list[int]:
        out = []
        while v:
            v = self.parent[v]
            out.append(v)
        return out

    def subtree(self, v: int) -> list[int]:
        out, stack = [], [v]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(self.children(x))
        return sorted(out)

    def level(self, d: int) -> list[int]:
        return [v for v in range(self.size) if self.depth[v] == d]


def gen_tree_graph(k: int, copies: int = 1) -> TreeLayout:
    if k < 1:
        raise GraphError("height parameter must be >= 1")
    if copies < 1:
        raise GraphError("copies must be >= 1")
    size = 2 ** k - 1
    parent = [0] + [(v - 1) // 2 for v in range(1, size)]
    depth = [0] * size
    for v in range(1, size):
        depth[v] = depth[parent[v]] + 1
    edges = []
    for v in range(1, size):
        a = v
        while a:
            a = parent[a]
            edges.append((a, v))
    one = Graph.from_edges(size, edges)
    g = disjoint_union(*([one] * copies))
    return TreeLayout(k, size, tuple(parent), tuple(depth),
                      tuple(i * size for i in range(copies)), g)


def gen_matching(ell: int) -> Graph:
    if ell < 1:
        raise GraphError("needs at least one edge")
    return Graph.from_edges(2 * ell, ((2 * i, 2 * i + 1) for i in range(ell)))


def clique_blocks(copies: int, size: int) -> list[list[int]]:
    return [list(range(i * size, (i + 1) * size)) for i in range(copies)]


def gen_disjoint_cliques(copies: int, size: int) -> Graph:
    if copies < 1 or size < 1:
        raise GraphError("copies and size must be positive")
    return disjoint_union(*([Graph.complete(size)] * copies))


def gen_clique_tree(t: int, s: int, attachments: Sequence[int] | None = None) -> Graph:
    """s copies of K_{2t+1}; clique i > 0 shares vertex ``attachments[i-1]``
    with the union built so far and adds 2t new vertices. Default attachments
    chain each clique onto the last vertex of the previous one."""
    if t < 1 or s < 1:
        raise GraphError("t and s must be positive")
    size = 2 * t + 1
    if attachments is None:
        attachments = [size - 1 + 2 * t * i for i in range(s - 1)]
    if len(attachments) != s - 1:
        raise GraphError(f"need {s - 1} attachment vertices, got {len(attachments)}")
    edges = list(combinations(range(size), 2))
    n = size
    for a in attachments:
        if not isinstance(a, int) or not 0 <= a < n:
            raise GraphError(f"attachment {a!r} is not in the union built so far (n={n})")
        clique = [a] + list(range(n, n + 2 * t))
        edges.extend(combinations(clique, 2))
        n += 2 * t
    return Graph.from_edges(n, edges)


def clique_tree_cliques(t: int, s: int, attachments: Sequence[int] | None = None) -> list[list[int]]:
    size = 2 * t + 1
    if attachments is None:
        attachments = [size - 1 + 2 * t * i for i in range(s - 1)]
    out, n = [list(range(size))], size
    for a in attachments:
        out.append([a] + list(range(n, n + 2 * t)))
        n += 2 * t
    return out


def gen_k4_pendant() -> Graph:
    return Graph.from_edges(5, list(combinations(range(4), 2)) + [(0, 4)])


DEDUPE_LIMIT = 7
LABELED_LIMIT = 6


def _code_tables(n: int):
    perms = np.array(list(permutations(range(n))), dtype=np.int64)
    pairs = list(combinations(range(n), 2))
    pi = np.array([p[0] for p in pairs], dtype=np.int64)
    pj = np.array([p[1] for p in pairs], dtype=np.int64)
    return perms, pi, pj


def canonical_code(g: Graph, tables=None) -> int:
    """Minimum adjacency bit-string over all relabelings (isomorphism
    invariant and complete). Brute force; meant for n <= 7."""
    if g.n == 1:
        return 0
    perms, pi, pj = tables if tables is not None else _code_tables(g.n)
    adj = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges():
        adj[u, v] = adj[v, u] = 1
    code, _ = graph_code(adj, perms, pi, pj)
    return int(code)


def graph_from_code(n: int, code: int) -> Graph:
    pairs = list(combinations(range(n), 2))
    m = len(pairs)
    return Graph.from_edges(n, (pairs[t] for t in range(m) if (code >> (m - 1 - t)) & 1))


def _labeled(n: int) -> Iterator[Graph]:
    pairs = list(combinations(range(n), 2))
    for bits in range(2 ** len(pairs)):
        yield Graph.from_edges(n, (p for t, p in enumerate(pairs) if (bits >> t) & 1))


@lru_cache(maxsize=None)
def isomorphism_classes(n: int) -> tuple[Graph, ...]:
    """One graph per isomorphism class on n vertices, in canonical-code
    order. Classes on n vertices come from adding a vertex to each class on
    n-1 vertices in every possible way, then deduplicating by canonical code."""
    if n < 1:
        raise GraphError("n must be positive")
    if n > DEDUPE_LIMIT:
        raise GraphError(f"dedupe is brute force and limited to n <= {DEDUPE_LIMIT}")
    if n == 1:
        return (Graph.empty(1),)
    tables = _code_tables(n)
    codes = set()
    for h in isomorphism_classes(n - 1):
        base = h.edges()
        for nbrs in range(2 ** (n - 1)):
            extra = [(u, n - 1) for u in range(n - 1) if (nbrs >> u) & 1]
            codes.add(canonical_code(Graph.from_edges(n, base + extra), tables))
    return tuple(graph_from_code(n, c) for c in sorted(codes))


def enumerate_corpus(max_n: int, dedupe: bool = True, min_n: int = 1) -> Iterator[Graph]:
    if dedupe and max_n > DEDUPE_LIMIT:
        raise GraphError(f"deduplicated corpus is limited to n <= {DEDUPE_LIMIT}")
    if not dedupe and max_n > LABELED_LIMIT:
        raise GraphError(f"labeled corpus is limited to n <= {LABELED_LIMIT}")
    for n in range(min_n, max_n + 1):
        yield from (isomorphism_classes(n) if dedupe else _labeled(n))


def parse_corpus_spec(spec: str) -> tuple[int, int]:
    """'n<=4', 'n=5', '3..5' or '4' to an inclusive (min_n, max_n) range."""
    s = spec.replace(" ", "")
    try:
        if s.startswith("n<="):
            return 1, int(s[3:])
        if s.startswith("n<"):
            return 1, int(s[2:]) - 1
        if s.startswith("n="):
            v = int(s[2:])
            return v, v
        if ".." in s:
            a, b = s.split("..")
            return int(a), int(b)
        return 1, int(s)
    except ValueError:
        raise GraphError(f"bad corpus spec {spec!r}") from None
