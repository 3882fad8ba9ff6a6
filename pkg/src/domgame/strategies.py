"""Executable strategies extracted from the constructive proofs, and a harness
to play them against each other, against the exact solver, or against every
possible opponent.

A strategy is reset once per game with the board it plays on, then asked for
a move whenever it is on turn, being told the opponent's last move. Anything
the proof treats as "arbitrary" is resolved to the lowest index.
"""
from __future__ import annotations

import copy
from dataclasses import dataclass, field
from typing import Hashable, Sequence

import numpy as np

from .constructions import TreeLayout, ZelinkaLayout
from .game import (ColoringState, GameError, GameSpec, Move, Player, Variant, apply_move,
                   dominating_colors, legal_moves, mod_star, score_bounds)
from .graph import Graph
from .makerbreaker import Hypergraph, MBState, breaker_move_es
from .solver import DEFAULT_BUDGET, BudgetExhausted, Solver


class StrategyInvariantError(AssertionError):
    """A step the proof promises is always possible turned out impossible."""


class HarnessError(RuntimeError):
    pass


def lowest_legal(state: ColoringState, color: int = 1) -> Move:
    unc = state.uncolored()
    if not unc:
        raise HarnessError("no uncolored vertex left")
    return Move(unc[0], color)


def _relevant(g: Graph, spec: GameSpec) -> list[int] | None:
    if spec.variant is Variant.BOBGOOD:
        return [v for v in range(g.n) if v not in spec.excluded]
    return None


class Strategy:
    """Base policy. Subclasses keep all game-dependent state in ``self.mem``
    so that ``fork`` and ``memory_key`` work generically."""

    name = "strategy"

    def reset(self, g: Graph, spec: GameSpec, role: Player, rng=None) -> None:
        self.g, self.spec, self.role = g, spec, Player.parse(role)
        self.rng = rng if rng is not None else np.random.default_rng(0)
        self.mem: dict = {}
        self.setup()

    def setup(self) -> None:
        pass

    def choose(self, state: ColoringState, last: Move | None) -> Move:
        raise NotImplementedError

    def fork(self) -> "Strategy":
        clone = copy.copy(self)
        clone.mem = copy.deepcopy(self.mem)
        for attr, inner in self._inner_items():
            setattr(clone, attr, inner.fork())
        return clone

    def _inner_items(self) -> list[tuple[str, "Strategy"]]:
        return [(k, v) for k, v in vars(self).items() if isinstance(v, Strategy)]

    def memory_key(self) -> Hashable:
        own = tuple(sorted((k, _freeze(v)) for k, v in self.mem.items()))
        inner = tuple(s.memory_key() for _, s in sorted(self._inner_items(), key=lambda p: p[0]))
        return own, inner

    def __repr__(self) -> str:
        return f"<{self.name}>"


def _freeze(v) -> Hashable:
    if isinstance(v, dict):
        return tuple(sorted((k, _freeze(x)) for k, x in v.items()))
    if isinstance(v, (list, tuple)):
        return tuple(_freeze(x) for x in v)
    if isinstance(v, (set, frozenset)):
        return frozenset(v)
    if isinstance(v, ColoringState):
        return v.colors
    return v


class RandomPolicy(Strategy):
    """Uniform over legal moves, driven by the harness seed."""

    name = "random"

    def choose(self, state, last):
        moves = legal_moves(state, self.spec)
        return moves[int(self.rng.integers(len(moves)))]


class LowestPolicy(Strategy):
    name = "lowest"

    def choose(self, state, last):
        return lowest_legal(state)


class ExactPolicy(Strategy):
    """Perfect play from the exact solver; the solver (and its table) is
    shared by forks and by later games on the same board."""

    name = "exact"

    def __init__(self, budget: int = DEFAULT_BUDGET):
        self.budget = budget
        self._solvers: dict = {}

    def setup(self):
        key = (self.g, self.spec)
        if key not in self._solvers:
            self._solvers[key] = Solver(self.g, self.spec, self.budget)
        self.solver = self._solvers[key]

    def choose(self, state, last):
        return self.solver.best_move(state)


class OneBob(Strategy):
    """Only ever color 1, at the lowest uncolored vertex."""

    name = "one_bob"

    def choose(self, state, last):
        return lowest_legal(state, 1)


def one_bob() -> Strategy:
    return OneBob()


class AuxCopyBob(Strategy):
    """Bob mirrors an auxiliary game on the same vertices: Alice's color c is
    entered there as ``color_map(c)``, and Bob copies the auxiliary Bob's move
    verbatim."""

    name = "aux_copy_bob"

    def __init__(self, inner: Strategy, aux_palette: int, color_map, label: str):
        self.inner = inner
        self.aux_palette = aux_palette
        self.color_map = color_map
        self.name = label

    def setup(self):
        self.aux_spec = GameSpec(self.aux_palette, self.spec.first, Variant.WIN)
        self.inner.reset(self.g, self.aux_spec, Player.B, self.rng)
        self.mem["aux"] = ColoringState.initial(self.g.n).colors

    def _enter(self, m: Move) -> None:
        colors = list(self.mem["aux"])
        colors[m.vertex] = m.color
        self.mem["aux"] = tuple(colors)

    def choose(self, state, last):
        aux_last = None
        if last is not None:
            aux_last = Move(last.vertex, self.color_map(last.color))
            self._enter(aux_last)
        aux = ColoringState(self.mem["aux"])
        m = self.inner.choose(aux, aux_last)
        try:
            apply_move(aux, m, self.aux_spec)
        except GameError as exc:
            raise StrategyInvariantError(f"auxiliary Bob made an illegal move: {exc}") from None
        self._enter(m)
        return m


def colorblind_lift(inner: Strategy, k: int, ell: int) -> Strategy:
    """Bob for palette k+ell built from a Bob for palette k: colors above k
    are read as k on the auxiliary board."""
    if k < 1 or ell < 0:
        raise ValueError("need k >= 1 and ell >= 0")
    return AuxCopyBob(inner, k, lambda c: min(c, k), "colorblind_lift")


def mod_star_bob(k: int, ell_total: int, inner: Strategy) -> Strategy:
    """Bob for palette ell_total built from a winning Bob for palette k+1;
    Alice's color c is read as mod*_{k+1}(c). Keeps the score at most
    ell_total - floor(ell_total / (k+1))."""
    if ell_total < k + 1:
        raise ValueError("need ell_total >= k + 1")
    return AuxCopyBob(inner, k + 1, lambda c: mod_star(k + 1, c), "mod_star_bob")


class SpecialVertexBob(Strategy):
    """Copy an optimal auxiliary score-game Bob, except that one main-board
    vertex (the special vertex) is colored with the special color but left
    blank on the auxiliary board. When the auxiliary Bob plays there, a new
    uncolored vertex gets the special color and becomes special instead.

    ``direction="AtoB"``: the main game is Bob-first, Bob's first move opens
    the special vertex with color 1 and the auxiliary game is Alice-first.
    ``direction="BtoA"``: the main game is Alice-first, Alice's first move
    becomes the special vertex (with her color) and the auxiliary game is
    Bob-first.
    """

    name = "special_vertex_bob"

    def __init__(self, direction: str, aux_bob: Strategy):
        if direction not in ("AtoB", "BtoA"):
            raise ValueError("direction must be 'AtoB' or 'BtoA'")
        self.direction = direction
        self.aux_bob = aux_bob

    def setup(self):
        want = Player.B if self.direction == "AtoB" else Player.A
        if self.spec.first is not want:
            raise HarnessError(f"{self.direction} protocol needs {want.label} to move first")
        aux_first = self.spec.first.other
        self.aux_spec = GameSpec(self.spec.palette, aux_first, Variant.SCORE)
        self.aux_bob.reset(self.g, self.aux_spec, Player.B, self.rng)
        self.mem.update(aux=(0,) * self.g.n, special=-1, color=1, started=False)

    def _enter(self, m: Move) -> None:
        colors = list(self.mem["aux"])
        colors[m.vertex] = m.color
        self.mem["aux"] = tuple(colors)

    def choose(self, state, last):
        mem = self.mem
        if self.direction == "AtoB" and not mem["started"]:
            mem["started"] = True
            v = state.uncolored()[0]
            mem["special"], mem["color"] = v, 1
            return Move(v, 1)
        aux_last = None
        if self.direction == "BtoA" and not mem["started"]:
            mem["started"] = True
            mem["special"], mem["color"] = last.vertex, last.color
        elif last is not None:
            self._enter(last)
            aux_last = last
        aux = ColoringState(mem["aux"])
        m = self.aux_bob.choose(aux, aux_last)
        try:
            apply_move(aux, m, self.aux_spec)
        except GameError as exc:
            raise StrategyInvariantError(f"auxiliary Bob made an illegal move: {exc}") from None
        self._enter(m)
        if m.vertex != mem["special"]:
            return m
        fresh = [u for u in state.uncolored() if u != mem["special"]]
        if not fresh:
            raise StrategyInvariantError("no uncolored vertex for a new special vertex")
        mem["special"] = fresh[0]
        return Move(fresh[0], mem["color"])

    def aux_state(self) -> ColoringState:
        return ColoringState(self.mem["aux"])


def special_vertex_bob(direction: str, aux_bob: Strategy) -> Strategy:
    return SpecialVertexBob(direction, aux_bob)


class ZelinkaBob(Strategy):
    """Color k+2 vertices of S with 1, then a T-vertex whose whole
    neighborhood is already 1; that vertex can never see color 2."""

    name = "zelinka_bob"

    def __init__(self, layout: ZelinkaLayout):
        self.layout = layout

    def setup(self):
        if self.g != self.layout.graph:
            raise HarnessError("zelinka_bob needs the graph of its layout")
        if self.spec.palette != 2:
            raise HarnessError("zelinka_bob plays the palette-2 game")
        self.mem["turn"] = 0

    def choose(self, state, last):
        lay = self.layout
        self.mem["turn"] += 1
        turn = self.mem["turn"]
        colors = state.colors
        if turn <= lay.k + 2:
            for s in lay.s_vertices:
                if colors[s] == 0:
                    return Move(s, 1)
            raise StrategyInvariantError("S is exhausted during the opening")
        if turn == lay.k + 3:
            for t, sub in zip(lay.t_vertices, lay.t_subsets):
                if colors[t] == 0 and all(colors[s] == 1 for s in sub):
                    self.mem["target"] = t
                    return Move(t, 1)
            raise StrategyInvariantError("no uncolored T-vertex with an all-1 neighborhood")
        return lowest_legal(state)


def zelinka_bob(layout: ZelinkaLayout) -> Strategy:
    return ZelinkaBob(layout)


class TreeBob(Strategy):
    """Descend from the root one level per turn with color 1, always into a
    child whose subtree is still blank. After k turns a leaf sees only 1.

    On a doubled tree Bob works in copy 0 when he moves first, otherwise in
    the first copy Alice did not open in."""

    name = "tree_bob"

    def __init__(self, layout: TreeLayout):
        self.layout = layout

    def setup(self):
        if self.g != self.layout.graph:
            raise HarnessError("tree_bob needs the graph of its layout")
        self.mem.update(turn=0, copy=-1, at=-1)

    def _copy_of(self, v: int) -> int:
        return v // self.layout.size

    def choose(self, state, last):
        lay, mem = self.layout, self.mem
        mem["turn"] += 1
        if mem["copy"] < 0:
            opened = {self._copy_of(v) for v, c in enumerate(state.colors) if c}
            free = [i for i in range(len(lay.offsets)) if i not in opened]
            if not free:
                raise StrategyInvariantError("every copy of the tree is already touched")
            mem["copy"] = free[0]
        if mem["turn"] > lay.k:
            return lowest_legal(state)
        off = lay.offsets[mem["copy"]]
        colors = state.colors
        if mem["at"] < 0:
            options = [0]
        else:
            options = lay.children(mem["at"])
        for v in options:
            blank = all(colors[off + x] == 0 for x in lay.subtree(v))
            above = all(colors[off + a] == 1 for a in lay.ancestors(v))
            if blank and above:
                mem["at"] = v
                return Move(off + v, 1)
        raise StrategyInvariantError(f"no blank child to descend into on turn {mem['turn']}")


def tree_bob(layout: TreeLayout) -> Strategy:
    return TreeBob(layout)


def _components(g: Graph) -> list[list[int]]:
    seen, out = set(), []
    for s in range(g.n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in g.adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


class CliqueAlice(Strategy):
    """Answer in the clique Bob just played in (else the lowest clique with
    room), with a color the clique does not show yet."""

    name = "clique_alice"

    def __init__(self, cliques: Sequence[Sequence[int]] | None = None):
        self.cliques = [list(c) for c in cliques] if cliques is not None else None

    def setup(self):
        if self.cliques is None:
            self.cliques = _components(self.g)
        self.where = {v: i for i, c in enumerate(self.cliques) for v in c}

    def choose(self, state, last):
        colors = state.colors
        target = None
        if last is not None:
            i = self.where[last.vertex]
            if any(colors[v] == 0 for v in self.cliques[i]):
                target = i
        if target is None:
            target = next(i for i, c in enumerate(self.cliques) if any(colors[v] == 0 for v in c))
        clique = self.cliques[target]
        shown = {colors[v] for v in clique}
        v = next(v for v in clique if colors[v] == 0)
        for c in range(1, self.spec.palette + 1):
            if c not in shown:
                return Move(v, c)
        return Move(v, 1)


def clique_alice(k: int | None = None, cliques: Sequence[Sequence[int]] | None = None) -> Strategy:
    return CliqueAlice(cliques)


class CliqueBobPhases(Strategy):
    """Bob for palette k+1 on disjoint (2k-1)-cliques, holding the score to k-1.

    Alice-first: echo Alice's opening color inside her clique until it is
    full. If that clique shows at most k-1 colors the job is done; otherwise
    it shows exactly k, and Bob floods a color it lacks into a blank clique.
    Bob-first adds a leading phase: flood color 1 into clique 0; Alice's first
    move elsewhere (color r, clique C) then plays the role of her opening, so
    Bob echoes r in C, and so on as above. Floods continue until the clique
    is full. Once done, Bob plays lowest-legal.
    """

    name = "clique_bob_phases"

    def __init__(self, k: int, cliques: Sequence[Sequence[int]] | None = None,
                 first: Player | None = None):
        self.k = k
        self.cliques = [list(c) for c in cliques] if cliques is not None else None
        self.first = first

    def setup(self):
        if self.cliques is None:
            self.cliques = _components(self.g)
        if self.first is not None and self.spec.first is not self.first:
            raise HarnessError(f"built for {self.first.label} moving first")
        if any(len(c) != 2 * self.k - 1 for c in self.cliques):
            raise HarnessError(f"clique_bob_phases needs cliques of order {2 * self.k - 1}")
        if self.spec.palette != self.k + 1:
            raise HarnessError(f"clique_bob_phases plays palette {self.k + 1}")
        self.where = {v: i for i, c in enumerate(self.cliques) for v in c}
        # stage: 'open' (B-first flood of clique 0), 'echo', 'flood', 'done'
        self.mem.update(stage=None, clique=-1, color=0, echoed=-1, floods=[])

    def _room(self, colors, i) -> list[int]:
        return [v for v in self.cliques[i] if colors[v] == 0]

    def _shown(self, colors, i) -> set[int]:
        return {colors[v] for v in self.cliques[i]} - {0}

    def _first_outside(self, state) -> Move:
        # Alice's single move outside clique 0 during the opening flood
        for v, c in enumerate(state.colors):
            if c and self.where[v] != 0 and v not in self.mem["mine"]:
                return Move(v, c)
        raise StrategyInvariantError("Alice never left the opening clique")

    def _start_flood(self, colors, echoed: int) -> None:
        mem = self.mem
        shown = self._shown(colors, echoed)
        if len(shown) <= self.k - 1:
            mem["stage"] = "done"
            return
        if len(shown) != self.k:
            raise StrategyInvariantError(f"clique {echoed} shows {len(shown)} colors")
        missing = min(c for c in range(1, self.k + 2) if c not in shown)
        fresh = [i for i, c in enumerate(self.cliques) if all(colors[v] == 0 for v in c)]
        if not fresh:
            raise StrategyInvariantError("no blank clique left to flood")
        mem.update(stage="flood", clique=fresh[0], color=missing)
        mem["floods"].append(0)

    def _step(self, state) -> Move | None:
        mem, colors = self.mem, state.colors
        if mem["stage"] == "open":
            room = self._room(colors, 0)
            if room:
                return Move(room[0], 1)
            if len(self._shown(colors, 0)) <= self.k - 1:
                mem["stage"] = "done"
                return None
            r = self._first_outside(state)
            mem.update(stage="echo", clique=self.where[r.vertex], color=r.color)
            return self._step(state)
        if mem["stage"] == "echo":
            room = self._room(colors, mem["clique"])
            if room:
                return Move(room[0], mem["color"])
            self._start_flood(colors, mem["clique"])
            return self._step(state)
        if mem["stage"] == "flood":
            room = self._room(colors, mem["clique"])
            if room:
                mem["floods"][-1] += 1
                return Move(room[0], mem["color"])
            mem["stage"] = "done"
        return None

    def choose(self, state, last):
        mem = self.mem
        if mem["stage"] is None:
            mem["mine"] = set()
            if last is None:
                mem["stage"] = "open"
            else:
                mem.update(stage="echo", clique=self.where[last.vertex], color=last.color)
        m = self._step(state)
        if m is None:
            m = lowest_legal(state)
        mem["mine"].add(m.vertex)
        return m


def clique_bob_phases(k: int, first: Player | str | None = None,
                      cliques: Sequence[Sequence[int]] | None = None) -> Strategy:
    return CliqueBobPhases(k, cliques, None if first is None else Player.parse(first))


class PartitionAlice(Strategy):
    """One Maker-Breaker game per part V_i of a vertex partition: Alice is
    Breaker in each and colors her claims with color i+1, Bob's vertices in
    V_i being Maker's. She answers in the part Bob just played in; when it is
    full (or on her opening) she moves in the lowest part with room, as if
    Maker had passed there."""

    name = "partition_alice"

    def __init__(self, parts: Sequence[Sequence[int]], hypergraph: Hypergraph, breaker=None):
        self.parts = [sorted(p) for p in parts]
        self.hypergraph = hypergraph
        self.breaker = breaker or breaker_move_es

    def setup(self):
        if len(self.parts) > self.spec.palette:
            raise HarnessError("more parts than colors")
        self.part_of = {v: i for i, p in enumerate(self.parts) for v in p}
        if len(self.part_of) != self.g.n:
            raise HarnessError("parts must cover the vertex set")
        self.sub = [self.hypergraph.restrict(p) for p in self.parts]
        self.mem["alice"] = frozenset()

    def choose(self, state, last):
        colors = state.colors
        i = None
        if last is not None:
            j = self.part_of[last.vertex]
            if any(colors[v] == 0 for v in self.parts[j]):
                i = j
        if i is None:
            i = next(j for j, p in enumerate(self.parts) if any(colors[v] == 0 for v in p))
        part = self.parts[i]
        mine = self.mem["alice"]
        s = MBState(maker=frozenset(v for v in part if colors[v] and v not in mine),
                    breaker=frozenset(v for v in part if v in mine), mover="breaker")
        free = [v for v in part if colors[v] == 0]
        v = self.breaker(self.sub[i], s, free)
        if v not in free:
            raise StrategyInvariantError(f"Breaker chose vertex {v} outside the free part")
        self.mem["alice"] = mine | {v}
        return Move(v, i + 1)


def partition_alice(parts: Sequence[Sequence[int]], hypergraph: Hypergraph, breaker=None) -> Strategy:
    return PartitionAlice(parts, hypergraph, breaker)


@dataclass(frozen=True)
class GluePlan:
    """Where the two halves of H ∪ K live in the union graph, and which
    composition case applies.

    ``h_rest`` lists union ids of V(H) minus L (local order), ``k_ids`` union
    ids of V(K); ``case`` is 'A1', 'A2' or 'A3'. ``h_graph``/``k_graph`` are
    the local boards the sub-strategies play on; ``x``/``y`` their first
    players.
    """

    graph: Graph
    h_rest: tuple[int, ...]
    k_ids: tuple[int, ...]
    h_graph: Graph
    k_graph: Graph
    case: str
    x: Player
    y: Player

    @property
    def main_first(self) -> Player:
        return Player.B if self.case == "A1" else Player.A


def glue_case(x: Player, y: Player, k_order: int, h_rest_order: int) -> str | None:
    """The AliceGood composition case matching the players and parities."""
    x, y = Player.parse(x), Player.parse(y)
    if x is Player.B and y is Player.B and k_order % 2 == 0 and h_rest_order % 2 == 0:
        return "A1"
    if x is Player.A and y is Player.B and k_order % 2 == 0 and h_rest_order % 2 == 1:
        return "A2"
    if x is Player.B and y is Player.A and k_order % 2 == 1 and h_rest_order % 2 == 0:
        return "A3"
    return None


class GluedAlice(Strategy):
    """Answer Bob in the half he just played in with that half's strategy.
    Case A2 opens in H - L, case A3 opens in K."""

    name = "glued_alice"

    def __init__(self, h_strategy: Strategy, k_strategy: Strategy, plan: GluePlan):
        self.h_strategy = h_strategy
        self.k_strategy = k_strategy
        self.plan = plan

    def setup(self):
        p = self.plan
        if self.g != p.graph:
            raise HarnessError("glued_alice needs the graph of its plan")
        if self.spec.first is not p.main_first:
            raise HarnessError(f"case {p.case} is played with {p.main_first.label} first")
        self.h_strategy.reset(p.h_graph, GameSpec(self.spec.palette, p.x), Player.A, self.rng)
        self.k_strategy.reset(p.k_graph, GameSpec(self.spec.palette, p.y), Player.A, self.rng)
        self.local = {}
        for i, v in enumerate(p.h_rest):
            self.local[v] = ("h", i)
        for i, v in enumerate(p.k_ids):
            self.local[v] = ("k", i)

    def _play(self, side: str, state: ColoringState, last: Move | None) -> Move:
        p = self.plan
        ids = p.h_rest if side == "h" else p.k_ids
        strat = self.h_strategy if side == "h" else self.k_strategy
        sub = ColoringState(tuple(state.colors[v] for v in ids))
        if sub.is_terminal:
            raise StrategyInvariantError(f"routing starved: no room left in the {side} half")
        local_last = Move(self.local[last.vertex][1], last.color) if last is not None else None
        m = strat.choose(sub, local_last)
        if sub.colors[m.vertex] != 0:
            raise StrategyInvariantError(f"{side}-half strategy chose colored vertex {m.vertex}")
        return Move(ids[m.vertex], m.color)

    def choose(self, state, last):
        if last is None:
            side = "h" if self.plan.case == "A2" else "k"
            return self._play(side, state, None)
        side = self.local[last.vertex][0]
        return self._play(side, state, last)


def plan_glue(union: Graph, h_rest: Sequence[int], k_ids: Sequence[int], x: Player | str,
              y: Player | str, k_graph: Graph | None = None) -> GluePlan:
    """Plan for a union whose H - L sits on ``h_rest`` and whose K sits on
    ``k_ids`` (both in union ids, local order as given)."""
    x, y = Player.parse(x), Player.parse(y)
    h_rest, k_ids = tuple(h_rest), tuple(k_ids)
    if set(h_rest) & set(k_ids) or len(set(h_rest) | set(k_ids)) != union.n:
        raise HarnessError("H - L and K must partition the union's vertices")
    case = glue_case(x, y, len(k_ids), len(h_rest))
    if case is None:
        raise HarnessError(f"no composition case for X={x.value}, Y={y.value}, "
                           f"|V(K)|={len(k_ids)}, |V(H)-L|={len(h_rest)}")
    h_graph = _induced(union, h_rest)
    if k_graph is None:
        k_graph = _induced(union, k_ids)
    return GluePlan(union, h_rest, k_ids, h_graph, k_graph, case, x, y)


def _induced(g: Graph, ids: Sequence[int]) -> Graph:
    pos = {v: i for i, v in enumerate(ids)}
    return Graph.from_edges(len(ids), ((pos[a], pos[b]) for a, b in g.edges()
                                       if a in pos and b in pos))


def glued_alice(h_strategy: Strategy, k_strategy: Strategy, plan: GluePlan) -> Strategy:
    return GluedAlice(h_strategy, k_strategy, plan)


@dataclass
class MatchRecord:
    transcript: list[Move]
    score: int | None
    winner: Player | None
    violations: list[str] = field(default_factory=list)
    forfeit: Player | None = None
    final: ColoringState | None = None


def play_match(g: Graph, spec: GameSpec, alice: Strategy, bob: Strategy,
               seed: int | None = 0) -> MatchRecord:
    rng = np.random.default_rng(seed)
    spec.check_graph(g)
    alice.reset(g, spec, Player.A, rng)
    bob.reset(g, spec, Player.B, rng)
    state = ColoringState.initial(g.n)
    transcript: list[Move] = []
    last: Move | None = None
    relevant = _relevant(g, spec)
    while not state.is_terminal:
        mover = state.mover(spec.first)
        strat = alice if mover is Player.A else bob
        try:
            m = Move(*strat.choose(state, last))
            state = apply_move(state, m, spec)
        except StrategyInvariantError as exc:
            return MatchRecord(transcript, None, mover.other, [f"{strat.name}: {exc}"], mover, state)
        except GameError as exc:
            return MatchRecord(transcript, None, mover.other,
                               [f"{strat.name} illegal move: {exc}"], mover, state)
        transcript.append(m)
        last = m
    score = dominating_colors(g, state, spec.palette, relevant).bit_count()
    winner = Player.A if score == spec.palette else Player.B
    return MatchRecord(transcript, score, winner, [], None, state)


@dataclass
class AdversaryResult:
    holds: bool
    worst_line: list[Move] | None
    positions: int
    violation: str | None = None


def exhaustive_adversary(g: Graph, spec: GameSpec, fixed: Strategy, fixed_role: Player | str,
                         target: int | None = None, budget: int = 5_000_000,
                         seed: int | None = 0) -> AdversaryResult:
    """Does ``fixed`` meet its objective against every opponent line?

    Alice's objective is a final score of at least ``target`` (default: the
    whole palette); Bob's is at most ``target`` (default: palette - 1). The
    opponent branches over all legal moves, the fixed side plays its policy
    on a forked copy per branch, and lines are cut off as soon as the score
    bounds decide the objective. Positions are memoized on the board, the
    last move and the policy's memory.
    """
    role = Player.parse(fixed_role)
    k = spec.palette
    if target is None:
        target = k if role is Player.A else k - 1
    relevant = _relevant(g, spec)
    fixed.reset(g, spec, role, np.random.default_rng(seed))
    memo: dict = {}
    count = 0

    def decided(state: ColoringState) -> bool | None:
        lo, hi = score_bounds(g, state, k, relevant)
        if role is Player.A:
            return True if lo >= target else (False if hi < target else None)
        return True if hi <= target else (False if lo > target else None)

    def rec(state: ColoringState, last: Move | None, strat: Strategy):
        # returns None if the objective holds below, else a refuting line
        nonlocal count
        d = decided(state)
        if d is not None:
            return None if d else []
        key = (state.colors, last, strat.memory_key())
        if key in memo:
            return memo[key]
        count += 1
        if count > budget:
            raise BudgetExhausted(f"adversary check exceeded {budget} positions")
        if state.mover(spec.first) is role:
            mine = strat.fork()
            try:
                m = Move(*mine.choose(state, last))
                child = apply_move(state, m, spec)
            except (StrategyInvariantError, GameError) as exc:
                raise _Refuted(str(exc)) from None
            sub = rec(child, m, mine)
            out = None if sub is None else [m] + sub
        else:
            out = None
            for m in legal_moves(state, spec):
                sub = rec(apply_move(state, m, spec), m, strat)
                if sub is not None:
                    out = [m] + sub
                    break
        memo[key] = out
        return out

    try:
        line = rec(ColoringState.initial(g.n), None, fixed)
    except _Refuted as exc:
        return AdversaryResult(False, None, count, str(exc))
    return AdversaryResult(line is None, line, count)


class _Refuted(Exception):
    pass


def exhaustive_adversary_check(g: Graph, spec: GameSpec, fixed: Strategy, fixed_role: Player | str,
                               target: int | None = None, budget: int = 5_000_000) -> bool:
    return exhaustive_adversary(g, spec, fixed, fixed_role, target, budget).holds


POLICIES = {
    "random": RandomPolicy,
    "lowest": LowestPolicy,
    "exact": ExactPolicy,
    "one_bob": OneBob,
}
