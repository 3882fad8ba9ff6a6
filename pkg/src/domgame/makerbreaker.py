"""Maker-Breaker games on small hypergraphs.

Exact solving, the Erdős–Selfridge potential strategy for Breaker (which keeps
working when Maker passes), and the hypergraph plumbing used by the
minimum-degree lower bound: closed-neighborhood hypergraphs, truncation to a
uniform size, random balanced partitions and the estimate f(i).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .graph import Graph, _mask, _members
from .solver import BudgetExhausted

DEFAULT_C = Fraction(1, 100)


class HypergraphError(ValueError):
    pass


class Side(str, enum.Enum):
    MAKER = "maker"
    BREAKER = "breaker"

    @property
    def other(self) -> "Side":
        return Side.BREAKER if self is Side.MAKER else Side.MAKER


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[frozenset[int], ...]

    def __init__(self, n: int, edges: Iterable[Iterable[int]]):
        if n < 0:
            raise HypergraphError("vertex count must be nonnegative")
        out, seen = [], set()
        for e in edges:
            e = frozenset(e)
            if not e:
                raise HypergraphError("empty edge")
            if any(not 0 <= v < n for v in e):
                raise HypergraphError(f"edge {sorted(e)} leaves the vertex range 0..{n - 1}")
            if e not in seen:
                seen.add(e)
                out.append(e)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(out))

    def masks(self) -> list[int]:
        return [_mask(e) for e in self.edges]

    def restrict(self, part: Iterable[int]) -> "Hypergraph":
        """Edges intersected with ``part`` (vertex ids unchanged); edges
        missing the part entirely are dropped."""
        part = frozenset(part)
        return Hypergraph(self.n, (e & part for e in self.edges if e & part))

    def weight(self) -> Fraction:
        """Sum of 2^-|e|, the quantity in the Erdős–Selfridge criterion."""
        return sum((Fraction(1, 2 ** len(e)) for e in self.edges), Fraction(0))


@dataclass(frozen=True)
class MBState:
    maker: frozenset[int] = frozenset()
    breaker: frozenset[int] = frozenset()
    mover: Side = Side.MAKER

    def __post_init__(self) -> None:
        object.__setattr__(self, "maker", frozenset(self.maker))
        object.__setattr__(self, "breaker", frozenset(self.breaker))
        object.__setattr__(self, "mover", Side(self.mover))
        if self.maker & self.breaker:
            raise HypergraphError("a vertex is claimed by both players")

    def free(self, h: Hypergraph) -> list[int]:
        taken = self.maker | self.breaker
        return [v for v in range(h.n) if v not in taken]


@dataclass(frozen=True)
class PartitionResult:
    parts: tuple[frozenset[int], ...]
    attempts: int


def es_potential(h: Hypergraph, s: MBState) -> Fraction:
    total = Fraction(0)
    for e in h.edges:
        if not e & s.breaker:
            total += Fraction(1, 2 ** len(e - s.maker))
    return total


def breaker_move_es(h: Hypergraph, s: MBState, candidates: Iterable[int] | None = None) -> int:
    """The free vertex whose claim lowers the potential most (lowest index on
    ties). Claiming v removes exactly the live edges through v, so the drop
    is the summed weight of those edges."""
    free = s.free(h) if candidates is None else sorted(candidates)
    taken = s.maker | s.breaker
    free = [v for v in free if v not in taken]
    if not free:
        raise HypergraphError("no unclaimed vertex for Breaker")
    maker, breaker = _mask(s.maker), _mask(s.breaker)
    live = [(e, Fraction(1, 1 << (e & ~maker).bit_count()))
            for e in h.masks() if not e & breaker]
    best, best_drop = free[0], Fraction(-1)
    for v in free:
        bit = 1 << v
        drop = sum((w for e, w in live if e & bit), Fraction(0))
        if drop > best_drop:
            best, best_drop = v, drop
    return best


BreakerPolicy = Callable[[Hypergraph, MBState], int]


def es_breaker(h: Hypergraph, s: MBState) -> int:
    return breaker_move_es(h, s)


def solve_mb_exact(h: Hypergraph, first: Side | str = Side.MAKER, maker_may_skip: bool = False,
                   breaker_policy: BreakerPolicy | None = None,
                   start: MBState | None = None, budget: int = 10_000_000) -> Side:
    """Winner under perfect play. With ``breaker_policy`` Breaker is bound to
    that policy and only Maker searches, which makes this a certificate that
    the policy holds against every Maker line.

    Maker wins by claiming a whole edge; otherwise the board fills up and
    Breaker wins. A Maker pass is only offered while a vertex is free, so
    every line terminates.
    """
    first = Side(first)
    edges = h.masks()
    full = (1 << h.n) - 1
    if start is None:
        start = MBState(mover=first)
    nodes = 0

    def maker_done(maker: int) -> bool:
        return any(e & maker == e for e in edges)

    def breaker_done(breaker: int) -> bool:
        return all(e & breaker for e in edges)

    @lru_cache(maxsize=None)
    def maker_wins(maker: int, breaker: int, maker_to_move: bool) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExhausted(f"Maker-Breaker search exceeded {budget} nodes")
        if maker_done(maker):
            return True
        if breaker_done(breaker):
            return False
        free = full & ~(maker | breaker)
        if not free:
            return False
        if maker_to_move:
            if any(maker_wins(maker | (1 << v), breaker, False) for v in _members(free)):
                return True
            return maker_may_skip and maker_wins(maker, breaker, False)
        if breaker_policy is not None:
            v = breaker_policy(h, MBState(frozenset(_members(maker)),
                                          frozenset(_members(breaker)), Side.BREAKER))
            if not (free >> v) & 1:
                raise HypergraphError(f"Breaker policy chose claimed vertex {v}")
            return maker_wins(maker, breaker | (1 << v), True)
        return all(maker_wins(maker, breaker | (1 << v), True) for v in _members(free))

    won = maker_wins(_mask(start.maker), _mask(start.breaker), start.mover is Side.MAKER)
    return Side.MAKER if won else Side.BREAKER


def closed_neighborhood_hypergraph(g: Graph) -> Hypergraph:
    return Hypergraph(g.n, (g.adj[v] | {v} for v in range(g.n)))


def truncate_edges(h: Hypergraph, target: int) -> Hypergraph:
    """Keep the ``target`` lowest-indexed vertices of every edge."""
    if target < 1:
        raise HypergraphError("target size must be positive")
    out = []
    for e in h.edges:
        if len(e) < target:
            raise HypergraphError(f"edge of size {len(e)} is smaller than target {target}")
        out.append(sorted(e)[:target])
    return Hypergraph(h.n, out)


def partition_ok(h: Hypergraph, parts: Sequence[Iterable[int]], threshold: int) -> bool:
    parts = [frozenset(p) for p in parts]
    return all(len(e & p) >= threshold for e in h.edges for p in parts)


def balanced_partition(h: Hypergraph, k: int, threshold: int, max_attempts: int = 1000,
                       seed: int | None = 0) -> PartitionResult | None:
    """Sample uniform random k-partitions until every edge meets every part
    in at least ``threshold`` vertices. ``None`` when every attempt fails."""
    if k < 1:
        raise HypergraphError("k must be positive")
    rng = np.random.default_rng(seed)
    masks = np.zeros((len(h.edges), h.n), dtype=bool)
    for i, e in enumerate(h.edges):
        masks[i, sorted(e)] = True
    for attempt in range(1, max_attempts + 1):
        label = rng.integers(0, k, size=h.n)
        onehot = label[None, :] == np.arange(k)[:, None]
        meet = masks.astype(np.int64) @ onehot.T.astype(np.int64)
        if meet.size == 0 or meet.min() >= threshold:
            parts = tuple(frozenset(np.flatnonzero(label == i).tolist()) for i in range(k))
            if not partition_ok(h, parts, threshold):
                raise AssertionError("sampled partition failed verification")
            return PartitionResult(parts, attempt)
    return None


def _exact(x) -> Fraction:
    # floats are read through their shortest repr, so 0.1 means 1/10
    return Fraction(str(x)) if isinstance(x, float) else Fraction(x)


def _dec(x: Fraction) -> Decimal:
    return Decimal(x.numerator) / Decimal(x.denominator)


def lemma_k(r, c) -> int:
    """k = ceil(c r), computed exactly."""
    return math.ceil(_exact(r) * _exact(c))


def lemma_f(i: int, n: int, r, c, prec: int = 60) -> Decimal:
    """f(i) = (e r ln n / (i (k - 1)))^i with k = ceil(c r)."""
    if i < 1:
        raise HypergraphError("i must be positive")
    if n < 2:
        raise HypergraphError("n must be at least 2")
    k = lemma_k(r, c)
    if k < 2:
        raise HypergraphError(f"k = ceil(c r) = {k} < 2")
    with localcontext() as ctx:
        ctx.prec = prec
        base = Decimal(1).exp() * _dec(_exact(r)) * Decimal(n).ln() / (Decimal(i) * (k - 1))
        return base ** i


def lemma_f_increasing(n: int, r, c, upto: int | None = None, prec: int = 60) -> bool:
    """f(i) <= f(i+1) for every integer 1 <= i <= upto (default log2 n + 1)."""
    if upto is None:
        upto = math.floor(math.log2(n) + 1)
    values = [lemma_f(i, n, r, c, prec) for i in range(1, upto + 2)]
    return all(a <= b for a, b in zip(values, values[1:]))


def log2_threshold(n: int) -> int:
    """Smallest integer edge size at least log2 n + 2."""
    return math.ceil(math.log2(n)) + 2 if n > 1 else 2
