"""Perfect-play evaluation of domatic games.

All variants reduce to one question answered by the search kernel: can Alice
force at least ``t`` colors that dominate a given vertex set? The win game
asks it for ``t = k``; score values come from successive thresholds sharing
one transposition table that stores proven score intervals.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from ._accel import new_table
from ._kernels import KERNELS, LOW, SHIFT
from .game import ColoringState, GameError, GameSpec, Move, Player, Variant, legal_moves
from .graph import Graph, induced_subgraph

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 500_000_000
_KEY_LIMIT = 2**62


class BudgetExhausted(RuntimeError):
    """The node ceiling was hit before the search finished."""


@dataclass
class SolveResult:
    value: int
    winner: Player | None
    nodes_expanded: int
    table_hits: int
    principal_line: list[Move] | None = None


@dataclass
class Solver:
    """Exact solver for one (graph, spec) pair.

    The transposition table lives as long as the solver, so repeated queries
    on positions of the same game (as made by policies) stay cheap.
    """

    g: Graph
    spec: GameSpec
    budget: int = DEFAULT_BUDGET
    kernels: object = field(default=None, repr=False)

    def __post_init__(self) -> None:
        self.spec.check_graph(self.g)
        n, k = self.g.n, self.spec.palette
        if (k + 1) ** n >= _KEY_LIMIT:
            raise GameError(f"position space (k+1)^n = {k + 1}^{n} is too large to key")
        if self.kernels is None:
            self.kernels = KERNELS
        closed = [sorted(self.g.adj[v] | {v}) for v in range(n)]
        self._indptr = np.zeros(n + 1, dtype=np.int64)
        self._indptr[1:] = np.cumsum([len(c) for c in closed])
        self._indices = np.array([u for c in closed for u in c], dtype=np.int64)
        self._rel = np.array([v not in self.spec.excluded for v in range(n)], dtype=np.bool_)
        self.table = new_table(self.kernels.jitted)
        self._stats = np.array([0, 0, self.budget], dtype=np.int64)

    @property
    def nodes_expanded(self) -> int:
        return int(self._stats[0])

    @property
    def table_hits(self) -> int:
        return int(self._stats[1])

    def _array(self, state: ColoringState) -> np.ndarray:
        if state.n != self.g.n:
            raise GameError(f"state has {state.n} vertices, graph has {self.g.n}")
        return np.array(state.colors, dtype=np.int64)

    def at_least(self, state: ColoringState, t: int) -> bool:
        """Does Alice force ``t`` or more dominating colors from ``state``?"""
        if t <= 0:
            return True
        if t > self.spec.palette:
            return False
        r = self.kernels.search(
            self._array(state), self._indptr, self._indices, self._rel,
            self.spec.palette, self.spec.first is Player.A, self.spec.restricted,
            t, self.table, self._stats,
        )
        if r < 0:
            raise BudgetExhausted(
                f"node budget {self.budget} exhausted on n={self.g.n}, spec={self.spec}"
            )
        return bool(r)

    def alice_wins(self, state: ColoringState | None = None) -> bool:
        state = state or ColoringState.initial(self.g.n)
        return self.at_least(state, self.spec.palette)

    def value(self, state: ColoringState | None = None) -> int:
        """Optimal number of colors dominating the relevant vertices."""
        state = state or ColoringState.initial(self.g.n)
        lo = 0
        hi = self.spec.palette
        key = self._key(state)
        e = self.table.get(key, -1)
        if e >= 0:
            lo, hi = e >> SHIFT, e & LOW
        while lo < hi:
            if self.at_least(state, lo + 1):
                lo += 1
            else:
                hi = lo
        return lo

    def _key(self, state: ColoringState) -> int:
        relabel = np.zeros(self.spec.palette + 1, dtype=np.int64)
        return int(self.kernels.canon_key(self._array(state), self.spec.palette,
                                          self.spec.restricted, relabel))

    def best_move(self, state: ColoringState) -> Move:
        """First optimal move in (vertex, color) order for the side to move."""
        moves = legal_moves(state, self.spec)
        if not moves:
            raise GameError("no legal move in a terminal position")
        alice = state.mover(self.spec.first) is Player.A
        if self.spec.scored:
            target = self.value(state)
            for m in moves:
                child = _child(state, m)
                if alice and self.at_least(child, target):
                    return m
                if not alice and not self.at_least(child, target + 1):
                    return m
            raise AssertionError("no child attains the position value")
        for m in moves:
            if self.alice_wins(_child(state, m)) == alice:
                return m
        return moves[0]

    def principal_line(self, state: ColoringState | None = None) -> list[Move]:
        state = state or ColoringState.initial(self.g.n)
        line = []
        while not state.is_terminal:
            m = self.best_move(state)
            line.append(m)
            state = _child(state, m)
        return line

    def solve(self, with_line: bool = False) -> SolveResult:
        root = ColoringState.initial(self.g.n)
        k = self.spec.palette
        if self.spec.scored:
            value = self.value(root)
            winner = None
        else:
            won = self.alice_wins(root)
            value = k if won else k - 1
            winner = Player.A if won else Player.B
        line = self.principal_line(root) if with_line else None
        return SolveResult(value, winner, self.nodes_expanded, self.table_hits, line)


def _child(state: ColoringState, m: Move) -> ColoringState:
    colors = list(state.colors)
    colors[m.vertex] = m.color
    return ColoringState(tuple(colors))


def solve(g: Graph, spec: GameSpec, budget: int = DEFAULT_BUDGET,
          with_line: bool = False) -> SolveResult:
    return Solver(g, spec, budget).solve(with_line)


def solve_win(g: Graph, first: Player | str, k: int, budget: int = DEFAULT_BUDGET) -> Player:
    spec = GameSpec(k, Player.parse(first), Variant.WIN)
    return Player.A if Solver(g, spec, budget).alice_wins() else Player.B


def solve_score(g: Graph, first: Player | str, k: int, budget: int = DEFAULT_BUDGET) -> int:
    return Solver(g, GameSpec(k, Player.parse(first), Variant.SCORE), budget).value()


def solve_restricted_score(g: Graph, first: Player | str, s: int,
                           budget: int = DEFAULT_BUDGET) -> int:
    spec = GameSpec(s, Player.parse(first), Variant.RESTRICTED_BOB)
    return Solver(g, spec, budget).value()


def solve_bobgood(h: Graph, excluded: Iterable[int], first: Player | str, k: int,
                  budget: int = DEFAULT_BUDGET) -> bool:
    """True iff Bob can win while leaving some non-excluded vertex short of
    a color, i.e. ``(h, excluded)`` is (first, k)-BobGood."""
    spec = GameSpec(k, Player.parse(first), Variant.BOBGOOD, frozenset(excluded))
    return not Solver(h, spec, budget).alice_wins()


def solve_alicegood(h: Graph, l: Iterable[int], first: Player | str, k: int,
                    budget: int = DEFAULT_BUDGET) -> bool:
    l = frozenset(l)
    for v in l:
        h.check_vertex(v)
    if len(l) >= h.n:
        raise GameError("AliceGood needs L to be a proper subset of V(H)")
    rest, _ = induced_subgraph(h, set(range(h.n)) - l)
    return solve_win(rest, first, k, budget) is Player.A


def game_number(g: Graph, first: Player | str, budget: int = DEFAULT_BUDGET) -> int:
    """Largest palette Alice wins with. Palettes are tried upward; once Bob
    wins at ``k`` he wins at every larger palette."""
    first = Player.parse(first)
    k = 1
    while k < g.n and solve_win(g, first, k + 1, budget) is Player.A:
        k += 1
    return k
