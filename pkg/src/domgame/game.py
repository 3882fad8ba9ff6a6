"""Rules of the domatic game and the domatic score game."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .graph import Graph, GraphError


class GameError(ValueError):
    """Illegal move, or a rule query on a position it does not apply to."""


class Player(str, enum.Enum):
    A = "A"
    B = "B"

    @property
    def other(self) -> "Player":
        return Player.B if self is Player.A else Player.A

    @property
    def label(self) -> str:
        return "Alice" if self is Player.A else "Bob"

    @classmethod
    def parse(cls, s: "str | Player") -> "Player":
        if isinstance(s, Player):
            return s
        key = s.strip().upper()[:1]
        try:
            return cls(key)
        except ValueError:
            raise GameError(f"unknown player {s!r}") from None


class Variant(str, enum.Enum):
    WIN = "win"
    SCORE = "score"
    RESTRICTED_BOB = "rscore"
    BOBGOOD = "bobgood"


@dataclass(frozen=True)
class GameSpec:
    palette: int
    first: Player = Player.A
    variant: Variant = Variant.WIN
    excluded: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not isinstance(self.palette, int) or self.palette < 1:
            raise GameError(f"palette must be a positive integer, got {self.palette!r}")
        object.__setattr__(self, "first", Player.parse(self.first))
        object.__setattr__(self, "variant", Variant(self.variant))
        object.__setattr__(self, "excluded", frozenset(self.excluded))
        if self.excluded and self.variant is not Variant.BOBGOOD:
            raise GameError("excluded vertices only apply to the BOBGOOD variant")

    def check_graph(self, g: Graph) -> None:
        for v in self.excluded:
            g.check_vertex(v)
        if self.variant is Variant.BOBGOOD and len(self.excluded) >= g.n:
            raise GameError("BOBGOOD exclusion must be a proper subset of V(G)")

    @property
    def restricted(self) -> bool:
        return self.variant is Variant.RESTRICTED_BOB

    @property
    def scored(self) -> bool:
        return self.variant in (Variant.SCORE, Variant.RESTRICTED_BOB)


class Move(NamedTuple):
    vertex: int
    color: int


@dataclass(frozen=True)
class ColoringState:
    colors: tuple[int, ...]

    @classmethod
    def initial(cls, n: int) -> "ColoringState":
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self.colors)

    @property
    def moves_made(self) -> int:
        return sum(1 for c in self.colors if c)

    @property
    def is_terminal(self) -> bool:
        return all(self.colors)

    def mover(self, first: Player) -> Player:
        return first if self.moves_made % 2 == 0 else first.other

    def uncolored(self) -> list[int]:
        return [v for v, c in enumerate(self.colors) if c == 0]


def legal_moves(state: ColoringState, spec: GameSpec) -> list[Move]:
    if state.is_terminal:
        return []
    k = spec.palette
    if spec.restricted and state.mover(spec.first) is Player.B:
        palette = (1,)
    else:
        palette = range(1, k + 1)
    return [Move(v, c) for v in state.uncolored() for c in palette]


def apply_move(state: ColoringState, m: Move, spec: GameSpec | None = None) -> ColoringState:
    v, c = m
    if not 0 <= v < state.n:
        raise GameError(f"vertex {v} out of range")
    if state.colors[v]:
        raise GameError(f"vertex {v} is already colored {state.colors[v]}")
    if c < 1 or (spec is not None and c > spec.palette):
        raise GameError(f"color {c} outside the palette")
    if spec is not None and spec.restricted and state.mover(spec.first) is Player.B and c != 1:
        raise GameError("restricted Bob may only play color 1")
    colors = list(state.colors)
    colors[v] = c
    return ColoringState(tuple(colors))


def replay(n: int, moves: Iterable[Move], spec: GameSpec | None = None) -> ColoringState:
    state = ColoringState.initial(n)
    for m in moves:
        state = apply_move(state, m, spec)
    return state


def seen_colors(g: Graph, colors: tuple[int, ...]) -> list[int]:
    """Per vertex, the bitmask of colors present on its closed neighborhood."""
    out = []
    for v in range(g.n):
        m = 1 << colors[v]
        for u in g.adj[v]:
            m |= 1 << colors[u]
        out.append(m & ~1)
    return out


def _check_terminal(g: Graph, state: ColoringState) -> None:
    if state.n != g.n:
        raise GraphError(f"state has {state.n} vertices, graph has {g.n}")
    if not state.is_terminal:
        raise GameError("position is not terminal")


def dominating_colors(g: Graph, state: ColoringState, k: int,
                      relevant: Iterable[int] | None = None) -> int:
    """Bitmask of colors in ``[k]`` present on every relevant closed
    neighborhood."""
    seen = seen_colors(g, state.colors)
    acc = (1 << (k + 1)) - 2
    for v in range(g.n) if relevant is None else relevant:
        acc &= seen[v]
    return acc


def terminal_score(g: Graph, state: ColoringState, k: int) -> int:
    _check_terminal(g, state)
    return dominating_colors(g, state, k).bit_count()


def alice_wins(g: Graph, state: ColoringState, spec: GameSpec) -> bool:
    _check_terminal(g, state)
    k = spec.palette
    if spec.variant is Variant.BOBGOOD:
        spec.check_graph(g)
        rel = [v for v in range(g.n) if v not in spec.excluded]
        return dominating_colors(g, state, k, rel).bit_count() == k
    return terminal_score(g, state, k) == k


def score_bounds(g: Graph, state: ColoringState, k: int,
                 relevant: Iterable[int] | None = None) -> tuple[int, int]:
    """(guaranteed, reachable) final number of dominating colors from a
    possibly unfinished position."""
    seen = seen_colors(g, state.colors)
    full = (1 << (k + 1)) - 2
    got = can = full
    for v in range(g.n) if relevant is None else relevant:
        got &= seen[v]
        if state.colors[v] and all(state.colors[u] for u in g.adj[v]):
            can &= seen[v]
    used = {c for c in state.colors if c}
    cap = len(used) + state.colors.count(0)
    return got.bit_count(), min(can.bit_count(), cap)


def canonical_key(state: ColoringState, fix_color_one: bool = False) -> tuple[int, ...]:
    """Relabel colors by first occurrence along ascending vertex index."""
    relabel: dict[int, int] = {1: 1} if fix_color_one else {}
    out = []
    for c in state.colors:
        if c == 0:
            out.append(0)
            continue
        if c not in relabel:
            relabel[c] = len(relabel) + 1
        out.append(relabel[c])
    return tuple(out)


def mod_star(s: int, x: int) -> int:
    """Least positive residue of ``x`` modulo ``s`` (multiples map to ``s``)."""
    if s < 1:
        raise GameError("mod_star needs s >= 1")
    r = x % s
    return s if r == 0 else r
