"""Check the inequalities of the domatic game theory against exact values.

``compute_report`` gathers every quantity a bound refers to, ``check_bounds``
turns a report into verdicts without recomputing anything, and
``sweep_corpus`` does both over many graphs. Theorems that fail produce FAIL
verdicts; conjectures and open questions only ever produce WARN.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .game import GameSpec, Player, Variant
from .graph import (Graph, delete_edge, delete_vertex, domatic_number, domination_number,
                    has_adjacent_degree2_pair, has_separated_degree2_pair,
                    has_two_pendant_gadget)
from .solver import (DEFAULT_BUDGET, BudgetExhausted, Solver, game_number, solve_alicegood,
                     solve_bobgood)


FAIL, WARN, OK = "FAIL", "WARN", "OK"
PLAYERS = (Player.A, Player.B)

# Quantities a report can hold; bounds declare which ones they read.
QUANTITIES = ("basic", "gamma", "dom", "domg", "wins", "score", "r", "edge", "vertex", "dombobgood")


@dataclass(frozen=True)
class Verdict:
    graph_id: str
    bound_id: str
    holds: bool
    lhs: int | Fraction
    rhs: int | Fraction
    severity: str

    def record(self) -> str:
        return "\t".join([self.graph_id, self.bound_id, "1" if self.holds else "0",
                          fmt_rational(self.lhs), fmt_rational(self.rhs), self.severity])


def fmt_rational(x: int | Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def graph_id(g: Graph) -> str:
    return f"n={g.n}:" + (";".join(f"{u}-{v}" for u, v in g.edges()) or "-")


@dataclass
class BoundReport:
    graph_id: str
    graph: Graph
    ceiling: int
    n: int = 0
    min_degree: int = 0
    max_degree: int = 0
    gamma: int | None = None
    dom: int | None = None
    domg: dict = field(default_factory=dict)          # X -> int
    wins: dict = field(default_factory=dict)          # (X, k) -> bool, Alice wins
    score: dict = field(default_factory=dict)         # (X, l) -> int
    r: dict = field(default_factory=dict)             # (X, t) -> int
    edge_domg: dict = field(default_factory=dict)     # (X, (u, v)) -> int
    edge_score: dict = field(default_factory=dict)    # (X, l, (u, v)) -> int
    vertex_score: dict = field(default_factory=dict)  # (l, v) -> score(G - v, A, l)
    dombobgood: dict = field(default_factory=dict)    # X -> bool
    gaps: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def universal(self) -> frozenset[int]:
        return self.graph.universal_vertices()


def compute_report(g: Graph, score_ceiling: int | None = None, gid: str | None = None,
                   needs: Iterable[str] = QUANTITIES, budget: int = DEFAULT_BUDGET) -> BoundReport:
    """All quantities in ``needs``; anything the node budget cannot reach is
    listed in ``gaps`` instead of failing the whole report."""
    needs = set(needs)
    ceiling = score_ceiling if score_ceiling is not None else g.n + 1
    rep = BoundReport(gid or graph_id(g), g, ceiling, g.n, g.min_degree, g.max_degree)

    def attempt(name: str, fn: Callable[[], None]) -> None:
        try:
            fn()
        except BudgetExhausted as exc:
            rep.gaps.append(f"{name}: {exc}")

    if "gamma" in needs:
        rep.gamma = domination_number(g)
    if "dom" in needs:
        rep.dom = domatic_number(g)
    if needs & {"domg", "dombobgood", "edge"}:
        for x in PLAYERS:
            attempt(f"domg({x.value})", lambda x=x: rep.domg.__setitem__(x, game_number(g, x, budget)))
    if "wins" in needs:
        for x in PLAYERS:
            solvers = {}
            for k in range(1, ceiling + 1):
                def win(x=x, k=k):
                    s = solvers.setdefault(k, Solver(g, GameSpec(k, x), budget))
                    rep.wins[x, k] = s.alice_wins()
                attempt(f"win({x.value},{k})", win)
    if "score" in needs or "r" in needs or "vertex" in needs:
        for x in PLAYERS:
            for ell in range(1, ceiling + 1):
                attempt(f"score({x.value},{ell})", lambda x=x, ell=ell: rep.score.__setitem__(
                    (x, ell), Solver(g, GameSpec(ell, x, Variant.SCORE), budget).value()))
    if "r" in needs:
        for x in PLAYERS:
            for t in range(1, ceiling + 1):
                attempt(f"r({x.value},{t})", lambda x=x, t=t: rep.r.__setitem__(
                    (x, t), Solver(g, GameSpec(t, x, Variant.RESTRICTED_BOB), budget).value()))
    if "edge" in needs:
        for e in g.edges():
            h = delete_edge(g, *e)
            for x in PLAYERS:
                attempt(f"domg(G-{e},{x.value})",
                        lambda h=h, x=x, e=e: rep.edge_domg.__setitem__((x, e), game_number(h, x, budget)))
                for ell in range(1, ceiling + 1):
                    attempt(f"score(G-{e},{x.value},{ell})", lambda h=h, x=x, e=e, ell=ell:
                            rep.edge_score.__setitem__(
                                (x, ell, e), Solver(h, GameSpec(ell, x, Variant.SCORE), budget).value()))
    if "vertex" in needs and g.n >= 2:
        for v in range(g.n):
            h = delete_vertex(g, v)
            for ell in range(1, ceiling + 1):
                attempt(f"score(G-{v},A,{ell})", lambda h=h, v=v, ell=ell: rep.vertex_score.__setitem__(
                    (ell, v), Solver(h, GameSpec(ell, Player.A, Variant.SCORE), budget).value()))
    if "dombobgood" in needs:
        ell_set = g.universal_vertices()
        if ell_set and len(ell_set) < g.n:
            for x in PLAYERS:
                if x in rep.domg:
                    attempt(f"bobgood({x.value})", lambda x=x: rep.dombobgood.__setitem__(
                        x, solve_bobgood(g, ell_set, x, rep.domg[x] + 1, budget)))
    return rep


# --- the catalog -----------------------------------------------------------

@dataclass(frozen=True)
class Bound:
    id: str
    needs: frozenset[str]
    check: Callable[[BoundReport], list[tuple[str, bool, object, object]]]
    severity: str = FAIL
    aliases: tuple[str, ...] = ()


def _chain(r):
    out = []
    for x in PLAYERS:
        if x in r.domg and r.dom is not None:
            out.append((f"({x.value})", r.domg[x] <= r.dom, r.domg[x], r.dom))
    if r.dom is not None:
        out.append(("(dom)", r.dom <= r.min_degree + 1, r.dom, r.min_degree + 1))
    return out


def _mindeg(r):
    rhs = Fraction(r.min_degree + 3, 2)
    return [(f"({x.value})", r.domg[x] <= rhs, r.domg[x], rhs) for x in PLAYERS if x in r.domg]


def _mindeg_odd(r):
    # cited refinement: regular of odd degree, Alice first
    if not (r.graph.is_regular() and r.min_degree % 2 == 1) or Player.A not in r.domg:
        return []
    rhs = Fraction(r.min_degree + 1, 2)
    return [("(A)", r.domg[Player.A] <= rhs, r.domg[Player.A], rhs)]


def _gamma_rhs(r):
    return Fraction(r.n, 2 * r.gamma) + 1


def _gamma(r):
    if r.gamma is None:
        return []
    rhs = _gamma_rhs(r)
    return [(f"({x.value})", r.domg[x] <= rhs, r.domg[x], rhs) for x in PLAYERS if x in r.domg]


def _scoreabs(r):
    if r.gamma is None:
        return []
    rhs = min(Fraction(r.min_degree + 3, 2), _gamma_rhs(r))
    return [(f"({x.value},{ell})", s <= rhs, s, rhs) for (x, ell), s in sorted(r.score.items())]


def _mono(r):
    out = []
    for (x, k), won in sorted(r.wins.items()):
        nxt = r.wins.get((x, k + 1))
        if nxt is not None:
            # Alice winning at k+1 forces Alice winning at k
            out.append((f"({x.value},{k})", int(nxt) <= int(won), int(nxt), int(won)))
    return out


def _score_eq(r):
    out = []
    for (x, k), s in sorted(r.score.items()):
        if x in r.domg and k <= r.domg[x]:
            out.append((f"({x.value},{k})", s == k, s, k))
    return out


def _score_lb(r):
    out = []
    for (x, ell), s in sorted(r.score.items()):
        if x in r.domg and ell > r.domg[x]:
            out.append((f"({x.value},{ell})", r.domg[x] - 1 <= s, r.domg[x] - 1, s))
    return out


def _score_ub(r):
    out = []
    for (x, ell), s in sorted(r.score.items()):
        if x in r.domg and ell >= r.domg[x] + 1:
            k = r.domg[x]
            rhs = Fraction(k, k + 1) * ell + 1
            out.append((f"({x.value},{ell})", s < rhs, s, rhs))
    return out


def _rs(r):
    out = []
    for (x, t), rt in sorted(r.r.items()):
        s = r.score.get((x, t))
        if s is not None:
            out.append((f"({x.value},{t})lo", s <= rt, s, rt))
            out.append((f"({x.value},{t})hi", rt <= s + 1, rt, s + 1))
        nxt = r.r.get((x, t + 1))
        if nxt is not None:
            out.append((f"({x.value},{t})mono", rt <= nxt, rt, nxt))
    return out


def _gaps(r):
    if Player.A not in r.domg or Player.B not in r.domg:
        return []
    a, b = r.domg[Player.A], r.domg[Player.B]
    return [
        ("(B<=2A+1)", b <= 2 * a + 1, b, 2 * a + 1),
        ("(A<=2B+1)", a <= 2 * b + 1, a, 2 * b + 1),
        ("(B>=(A-1)/2)", Fraction(a - 1, 2) <= b, Fraction(a - 1, 2), b),
        ("(A>=(B-1)/2)", Fraction(b - 1, 2) <= a, Fraction(b - 1, 2), a),
    ]


def _edge(r):
    out = []
    for (x, e), d in sorted(r.edge_domg.items()):
        if x in r.domg:
            out.append((f"({x.value},{e[0]}-{e[1]})domg", d <= r.domg[x], d, r.domg[x]))
    for (x, ell, e), d in sorted(r.edge_score.items()):
        s = r.score.get((x, ell))
        if s is None:
            continue
        tag = f"({x.value},{ell},{e[0]}-{e[1]})"
        out.append((tag + "score", d <= s, d, s))
        out.append((tag + "drop", s - 2 <= d, s - 2, d))
    return out


def _vertex(r):
    out = []
    for (ell, v), d in sorted(r.vertex_score.items()):
        s = r.score.get((Player.B, ell))
        if s is not None:
            out.append((f"({ell},{v})", s - 1 <= d, s - 1, d))
    return out


def _gadget1(r):
    if not has_two_pendant_gadget(r.graph):
        return []
    return [(f"({x.value})", r.domg[x] == 1, r.domg[x], 1) for x in PLAYERS if x in r.domg]


def _gadget2(r):
    if r.n % 2 or not has_adjacent_degree2_pair(r.graph):
        return []
    return [(f"({x.value})", r.domg[x] == 1, r.domg[x], 1) for x in PLAYERS if x in r.domg]


def _gadget2_proven(r):
    # the case the BobGood argument covers: Alice first, and the two
    # degree-2 vertices have different other neighbors (P4 / C4 shape)
    if r.n % 2 or not has_separated_degree2_pair(r.graph) or Player.A not in r.domg:
        return []
    return [("(A)", r.domg[Player.A] == 1, r.domg[Player.A], 1)]


def _dombobgood(r):
    return [(f"({x.value})", ok, int(ok), 1) for x, ok in sorted(r.dombobgood.items())]


def clique_cover(g: Graph) -> tuple[int, int] | None:
    """(copies, order) when g is a disjoint union of equal cliques."""
    seen, sizes = set(), []
    for v in range(g.n):
        if v in seen:
            continue
        comp = g.adj[v] | {v}
        if any((g.adj[u] | {u}) != comp for u in comp):
            return None
        seen |= comp
        sizes.append(len(comp))
    if len(set(sizes)) != 1:
        return None
    return len(sizes), sizes[0]


def _score_drop(r):
    cc = clique_cover(r.graph)
    if cc is None:
        return []
    copies, order = cc
    if copies < 3 or order % 2 == 0:
        return []
    k = (order + 1) // 2
    out = []
    for x in PLAYERS:
        if (x, k + 1) in r.score:
            out.append((f"({x.value},{k + 1})", r.score[x, k + 1] == k - 1, r.score[x, k + 1], k - 1))
        if x in r.domg:
            out.append((f"({x.value})domg", r.domg[x] == k, r.domg[x], k))
    return out


def _conj(r):
    if Player.A not in r.domg or Player.B not in r.domg:
        return []
    d = abs(r.domg[Player.A] - r.domg[Player.B])
    return [("", d <= 1, d, 1)]


def _q2(r):
    out = []
    for (x, k), s in sorted(r.score.items()):
        if x in r.domg and k >= r.domg[x]:
            out.append((f"({x.value},{k})", s <= r.domg[x], s, r.domg[x]))
    return out


def _b(id, needs, check, severity=FAIL, aliases=()):
    return Bound(id, frozenset(needs) | {"basic"}, check, severity, tuple(aliases))


CATALOG: list[Bound] = [
    _b("B-CHAIN", {"domg", "dom"}, _chain, aliases=("chain",)),
    _b("B-MINDEG", {"domg"}, _mindeg, aliases=("mindeg",)),
    _b("B-MINDEG-ODD", {"domg"}, _mindeg_odd, aliases=("mindeg-odd",)),
    _b("B-GAMMA", {"domg", "gamma"}, _gamma, aliases=("gamma",)),
    _b("B-SCOREABS", {"score", "gamma"}, _scoreabs, aliases=("scoreabs",)),
    _b("B-MONO", {"wins"}, _mono, aliases=("mono", "monotonicity")),
    _b("B-SCORE-EQ", {"score", "domg"}, _score_eq, aliases=("score-eq",)),
    _b("B-SCORE-LB", {"score", "domg"}, _score_lb, aliases=("score-lb",)),
    _b("B-SCORE-UB", {"score", "domg"}, _score_ub, aliases=("score-ub",)),
    _b("B-RS", {"score", "r"}, _rs, aliases=("rs", "sandwich")),
    _b("B-GAPS", {"domg"}, _gaps, aliases=("gaps",)),
    _b("B-EDGE", {"domg", "score", "edge"}, _edge, aliases=("edge",)),
    _b("B-VERTEX", {"score", "vertex"}, _vertex, aliases=("vertex",)),
    _b("B-GADGET1", {"domg"}, _gadget1, aliases=("gadget1",)),
    _b("B-GADGET2", {"domg"}, _gadget2, aliases=("gadget2",)),
    _b("B-GADGET2-PROVEN", {"domg"}, _gadget2_proven, aliases=("gadget2-proven",)),
    _b("B-DOMBOBGOOD", {"domg", "dombobgood"}, _dombobgood, aliases=("dombobgood",)),
    _b("B-SCORE-DROP", {"score", "domg"}, _score_drop, aliases=("score-drop",)),
    _b("W-CONJ", {"domg"}, _conj, WARN, aliases=("conj", "conjecture")),
    _b("W-Q2", {"score", "domg"}, _q2, WARN, aliases=("q2", "question")),
]
BY_ID = {b.id: b for b in CATALOG}
GLUE_IDS = ("B-BOBGOOD", "B-ALICEGOOD")


GLUE_ALIASES = {"bobgood": "B-BOBGOOD", "alicegood": "B-ALICEGOOD", "glue": "glue"}


def _names(names: Sequence[str] | str | None) -> list[str] | None:
    if names is None:
        return None
    if isinstance(names, str):
        names = names.replace(";", ",").split(",")
    names = [s.strip() for s in names if s.strip()]
    return None if any(s.lower() in ("all", "--all") for s in names) else names


def _glue_name(key: str) -> str | None:
    if key.upper() in GLUE_IDS:
        return key.upper()
    return GLUE_ALIASES.get(key.lower())


def select_bounds(names: Sequence[str] | str | None) -> list[Bound]:
    """Per-graph bounds by id or alias; ``None`` or 'all' select everything.
    Gluing bounds are accepted and skipped here (see ``selects_glue``)."""
    names = _names(names)
    if names is None:
        return list(CATALOG)
    out = []
    for key in names:
        if _glue_name(key):
            continue
        hit = BY_ID.get(key.upper()) or next((b for b in CATALOG if key.lower() in b.aliases), None)
        if hit is None:
            raise KeyError(f"unknown bound {key!r}")
        if hit not in out:
            out.append(hit)
    return out


def selects_glue(names: Sequence[str] | str | None) -> bool:
    names = _names(names)
    return names is None or any(_glue_name(k) for k in names)


def needs_of(bounds: Iterable[Bound]) -> set[str]:
    out = set()
    for b in bounds:
        out |= b.needs
    return out


def check_bounds(r: BoundReport, bounds: Sequence[Bound] | None = None) -> list[Verdict]:
    out = []
    for b in bounds if bounds is not None else CATALOG:
        for tag, holds, lhs, rhs in b.check(r):
            sev = OK if holds else b.severity
            out.append(Verdict(r.graph_id, b.id + tag, bool(holds), lhs, rhs, sev))
    return out


# --- gluing ------------------------------------------------------------------

@dataclass(frozen=True)
class GlueInstance:
    name: str
    h: Graph
    l: frozenset[int]
    k: Graph
    identification: tuple[tuple[int, int], ...]  # (vertex of k, vertex of h)


def glue_pieces() -> dict[str, Graph]:
    return {
        "K1": Graph.complete(1), "K2": Graph.complete(2), "K3": Graph.complete(3),
        "P3": Graph.path(3), "P4": Graph.path(4), "C4": Graph.cycle(4), "K4": Graph.complete(4),
        "K5": Graph.complete(5),
    }


def glue_catalog(h_graphs: Iterable[tuple[str, Graph]] | None = None, max_l: int = 2,
                 max_union: int = 7) -> list[GlueInstance]:
    """Small (H, L, K) instances: H from ``h_graphs`` (default: the piece
    list), L every nonempty proper subset of size <= max_l, K every piece of
    order >= |L| glued onto L through its lowest vertices."""
    pieces = glue_pieces()
    if h_graphs is None:
        h_graphs = list(pieces.items())
    out = []
    for hname, h in h_graphs:
        for size in range(1, max_l + 1):
            for l in combinations(range(h.n), size):
                if len(l) >= h.n:
                    continue
                for kname, k in pieces.items():
                    if k.n < size or h.n + k.n - size > max_union:
                        continue
                    ident = tuple((i, v) for i, v in enumerate(l))
                    out.append(GlueInstance(f"{hname}|L={list(l)}|{kname}", h, frozenset(l), k, ident))
    return out


def _union(inst: GlueInstance) -> Graph:
    from .graph import glue
    g, _ = glue(inst.h, inst.k, dict(inst.identification))
    return g


def check_glue(inst: GlueInstance, max_ell: int = 3, budget: int = DEFAULT_BUDGET) -> list[Verdict]:
    """BobGood (B1/B2) and AliceGood (A1/A2/A3) composition bounds on one
    instance, for every palette 2..max_ell where the hypothesis holds."""
    g = _union(inst)
    gid = inst.name
    kv, lv = inst.k.n, len(inst.l)
    h_rest = inst.h.n - lv
    domg_u = {x: game_number(g, x, budget) for x in PLAYERS}
    domg_k = {y: game_number(inst.k, y, budget) for y in PLAYERS}
    out = []
    for ell in range(2, max_ell + 1):
        for x in PLAYERS:
            if solve_bobgood(inst.h, inst.l, x, ell, budget):
                if (kv - lv) % 2 == 0:
                    out.append(Verdict(gid, f"B-BOBGOOD(B1,{x.value},{ell})", domg_u[x] <= ell - 1,
                                       domg_u[x], ell - 1, FAIL if domg_u[x] > ell - 1 else OK))
                elif x is Player.A:
                    d = domg_u[Player.B]
                    out.append(Verdict(gid, f"B-BOBGOOD(B2,{ell})", d <= ell - 1, d, ell - 1,
                                       FAIL if d > ell - 1 else OK))
    for ell in range(1, max_ell + 1):
        for x in PLAYERS:
            if not solve_alicegood(inst.h, inst.l, x, ell, budget):
                continue
            for y in PLAYERS:
                if domg_k[y] < ell:
                    continue
                case = _alicegood_case(x, y, kv, h_rest)
                if case is None:
                    continue
                z = Player.B if case == "A1" else Player.A
                d = domg_u[z]
                out.append(Verdict(gid, f"B-ALICEGOOD({case},{ell})", d >= ell, ell, d,
                                   OK if d >= ell else FAIL))
    return out


def _alicegood_case(x: Player, y: Player, k_order: int, h_rest: int) -> str | None:
    from .strategies import glue_case
    return glue_case(x, y, k_order, h_rest)


# --- sweeping ----------------------------------------------------------------

@dataclass
class SweepConfig:
    score_ceiling: int | None = None
    bounds: Sequence[str] | None = None
    budget: int = DEFAULT_BUDGET
    workers: int = 1


@dataclass
class SweepSummary:
    verdicts: list[Verdict] = field(default_factory=list)
    graphs: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)   # (graph id, edge list)
    warnings: Counter = field(default_factory=Counter)
    conj_gap: Counter = field(default_factory=Counter)
    gaps: list[str] = field(default_factory=list)

    @property
    def fail_count(self) -> int:
        return sum(v.severity == FAIL for v in self.verdicts)

    def failing_bounds(self) -> Counter:
        return Counter(v.bound_id.split("(")[0] for v in self.verdicts if v.severity == FAIL)


def _one(args) -> tuple[list[Verdict], list[str], int | None]:
    g, gid, cfg = args
    bounds = select_bounds(cfg.bounds)
    rep = compute_report(g, cfg.score_ceiling, gid, needs_of(bounds), cfg.budget)
    gap = None
    if Player.A in rep.domg and Player.B in rep.domg:
        gap = abs(rep.domg[Player.A] - rep.domg[Player.B])
    return check_bounds(rep, bounds), rep.gaps, gap


def sweep_corpus(corpus: Iterable[Graph | tuple[str, Graph]], config: SweepConfig | None = None,
                 on_verdict: Callable[[Verdict], None] | None = None) -> SweepSummary:
    """Reports for every graph, verdicts in corpus order. Failures are data."""
    cfg = config or SweepConfig()
    items = []
    for item in corpus:
        gid, g = item if isinstance(item, tuple) else (graph_id(item), item)
        items.append((g, gid, cfg))
    summary = SweepSummary()
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(_one, items, chunksize=4))
    else:
        results = map(_one, items)
    for (g, gid, _), (verdicts, gaps, gap) in zip(items, results):
        summary.graphs += 1
        summary.gaps.extend(f"{gid}: {x}" for x in gaps)
        if gap is not None:
            summary.conj_gap[gap] += 1
        failed = False
        for v in verdicts:
            summary.verdicts.append(v)
            if on_verdict is not None:
                on_verdict(v)
            if v.severity == FAIL:
                failed = True
            elif v.severity == WARN:
                summary.warnings[v.bound_id.split("(")[0]] += 1
        if failed:
            summary.failures.append((gid, " ".join(f"{u}-{v}" for u, v in g.edges())))
    return summary


def sweep_glue(instances: Iterable[GlueInstance], max_ell: int = 3, budget: int = DEFAULT_BUDGET,
               on_verdict: Callable[[Verdict], None] | None = None) -> SweepSummary:
    summary = SweepSummary()
    for inst in instances:
        summary.graphs += 1
        failed = False
        for v in check_glue(inst, max_ell, budget):
            summary.verdicts.append(v)
            if on_verdict is not None:
                on_verdict(v)
            failed |= v.severity == FAIL
        if failed:
            summary.failures.append((inst.name, " ".join(f"{u}-{v}" for u, v in _union(inst).edges())))
    return summary
