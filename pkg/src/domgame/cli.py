"""domgame command line: solve, gamenumber, gen, verify, match.

Exit codes: 0 success, 1 a theorem bound failed, 2 bad input or usage,
3 node budget exhausted.
"""
from __future__ import annotations

import argparse
import sys
from collections import Counter
from typing import Sequence

from . import bounds as bv
from . import constructions as cons
from . import strategies as st
from .formats import FormatError, format_moves, read_graph, read_report, serialize_graph
from .game import GameError, GameSpec, Player, Variant
from .graph import Graph, GraphError
from .makerbreaker import HypergraphError
from .solver import DEFAULT_BUDGET, BudgetExhausted, Solver, game_number

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _out(line: str = "") -> None:
    sys.stdout.write(line + "\n")


def _err(line: str) -> None:
    sys.stderr.write(line + "\n")


# --- solve / gamenumber --------------------------------------------------------

def cmd_solve(args) -> int:
    g = read_graph(args.input)
    spec = GameSpec(args.palette, args.first, Variant(args.variant))
    solver = Solver(g, spec, args.budget)
    res = solver.solve(with_line=args.line)
    _out(res.winner.label if res.winner is not None else str(res.value))
    _out(f"# nodes={res.nodes_expanded} table_hits={res.table_hits}")
    if res.principal_line is not None:
        _out("# line " + format_moves(res.principal_line))
    return EXIT_OK


def cmd_gamenumber(args) -> int:
    g = read_graph(args.input)
    _out(str(game_number(g, args.first, args.budget)))
    return EXIT_OK


# --- gen -------------------------------------------------------------------------

def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"family {args.family} needs --{name.replace('_', '-')}")
    return [getattr(args, name) for name in names]


def _gen(args) -> tuple[Graph, str]:
    f = args.family
    if f == "zelinka":
        (n,) = _need(args, "n")
        lay = cons.gen_zelinka(n)
        return lay.graph, f"zelinka n={n} k={lay.k}"
    if f == "cliques":
        copies, size = _need(args, "copies", "size")
        return cons.gen_disjoint_cliques(copies, size), f"cliques copies={copies} size={size}"
    if f == "tree":
        (k,) = _need(args, "k")
        copies = 2 if args.doubled else (args.copies or 1)
        return cons.gen_tree_graph(k, copies).graph, f"tree k={k} copies={copies}"
    if f == "two-pendant":
        (n,) = _need(args, "n")
        return cons.gen_two_pendant(n), f"two-pendant n={n}"
    if f == "matching":
        (ell,) = _need(args, "l")
        return cons.gen_matching(ell), f"matching l={ell}"
    if f == "clique-tree":
        t, s = _need(args, "t", "s")
        return cons.gen_clique_tree(t, s), f"clique-tree t={t} s={s}"
    if f == "k4-pendant":
        return cons.gen_k4_pendant(), "k4-pendant"
    (n,) = _need(args, "n")
    maker = {"path": Graph.path, "cycle": Graph.cycle, "complete": Graph.complete, "empty": Graph.empty}
    return maker[f](n), f"{f} n={n}"


FAMILIES = ("zelinka", "cliques", "tree", "two-pendant", "matching", "clique-tree", "k4-pendant",
            "path", "cycle", "complete", "empty")


def cmd_gen(args) -> int:
    g, comment = _gen(args)
    sys.stdout.write(serialize_graph(g, comment))
    return EXIT_OK


# --- verify ------------------------------------------------------------------------

def cmd_verify(args) -> int:
    try:
        bounds = bv.select_bounds(args.bounds)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    glue = bv.selects_glue(args.bounds)
    if not (args.corpus or args.file or args.report):
        raise UsageError("verify needs --corpus, --file or --report")
    summaries = []

    def emit(v: bv.Verdict) -> None:
        _out(v.record())

    if args.report:
        for path in args.report:
            r = read_report(path)
            verdicts = bv.check_bounds(r, bounds)
            s = bv.SweepSummary(verdicts=verdicts, graphs=1, gaps=list(r.gaps))
            if any(v.severity == bv.FAIL for v in verdicts):
                s.failures.append((r.graph_id, " ".join(f"{u}-{v}" for u, v in r.graph.edges())))
            for v in verdicts:
                emit(v)
                if v.severity == bv.WARN:
                    s.warnings[v.bound_id.split("(")[0]] += 1
            summaries.append(s)
    cfg = bv.SweepConfig(args.ceiling, args.bounds, args.budget, args.workers)
    graphs: list = []
    if args.file:
        graphs += [(path, read_graph(path)) for path in args.file]
    if args.corpus:
        lo, hi = cons.parse_corpus_spec(args.corpus)
        graphs += [(bv.graph_id(g), g) for g in cons.enumerate_corpus(hi, min_n=lo)]
    if graphs:
        if bounds:
            summaries.append(bv.sweep_corpus(graphs, cfg, emit))
        if glue:
            hs = [(gid, g) for gid, g in graphs if 2 <= g.n <= args.glue_max_h]
            if hs:
                summaries.append(bv.sweep_glue(bv.glue_catalog(hs, max_union=args.glue_max_union),
                                               args.glue_max_ell, args.budget, emit))
    return _summarize(summaries)


def _summarize(summaries) -> int:
    fails = sum(s.fail_count for s in summaries)
    records = sum(len(s.verdicts) for s in summaries)
    by_bound, warns, conj = Counter(), Counter(), Counter()
    gaps = []
    for s in summaries:
        by_bound.update(s.failing_bounds())
        warns.update(s.warnings)
        conj.update(s.conj_gap)
        gaps += s.gaps
    _err(f"# records={records} fail={fails} warn={sum(warns.values())} gaps={len(gaps)}")
    for bid, c in sorted(by_bound.items()):
        _err(f"# FAIL {bid}: {c}")
    for bid, c in sorted(warns.items()):
        _err(f"# WARN {bid}: {c}")
    if conj:
        _err("# |domg_A-domg_B| distribution: " + " ".join(f"{d}:{c}" for d, c in sorted(conj.items())))
    for s in summaries:
        for gid, edges in s.failures:
            _err(f"# counterexample {gid} edges: {edges}")
    for gap in gaps:
        _err(f"# gap {gap}")
    if fails:
        return EXIT_FAIL
    return EXIT_BUDGET if gaps else EXIT_OK


# --- match ---------------------------------------------------------------------------

def _tree_layout(g: Graph) -> cons.TreeLayout:
    for k in range(1, 12):
        size = 2 ** k - 1
        if size > g.n:
            break
        if g.n % size == 0:
            lay = cons.gen_tree_graph(k, g.n // size)
            if lay.graph == g:
                return lay
    raise UsageError("tree_bob needs a (disjoint union of) tree graph(s) as generated by `gen tree`")


def _cliques(g: Graph) -> tuple[int, int]:
    cc = bv.clique_cover(g)
    if cc is None:
        raise UsageError("clique policies need a disjoint union of equal cliques")
    return cc


def make_policy(name: str, g: Graph, spec: GameSpec, budget: int) -> st.Strategy:
    if name == "random":
        return st.RandomPolicy()
    if name == "lowest":
        return st.LowestPolicy()
    if name == "exact":
        return st.ExactPolicy(budget)
    if name == "one_bob":
        return st.one_bob()
    if name == "zelinka_bob":
        try:
            lay = cons.gen_zelinka(g.n)
        except GraphError:
            lay = None
        if lay is None or lay.graph != g:
            raise UsageError("zelinka_bob needs the graph from `gen zelinka`")
        return st.zelinka_bob(lay)
    if name == "tree_bob":
        return st.tree_bob(_tree_layout(g))
    if name == "clique_alice":
        _cliques(g)
        return st.clique_alice()
    if name == "clique_bob_phases":
        _, order = _cliques(g)
        if order % 2 == 0:
            raise UsageError("clique_bob_phases needs cliques of odd order 2k-1")
        return st.clique_bob_phases((order + 1) // 2)
    raise UsageError(f"unknown policy {name!r}")


ALICE_POLICIES = ("random", "lowest", "exact", "clique_alice")
BOB_POLICIES = ("random", "lowest", "exact", "one_bob", "zelinka_bob", "tree_bob", "clique_bob_phases")


def _seeds(args) -> list[int]:
    if args.seeds < 1:
        raise UsageError("--seeds must be positive")
    return list(range(args.seed, args.seed + args.seeds))


def cmd_match(args) -> int:
    g = read_graph(args.input)
    spec = GameSpec(args.palette, args.first, Variant(args.variant))
    spec.check_graph(g)
    alice = make_policy(args.alice, g, spec, args.budget)
    bob = make_policy(args.bob, g, spec, args.budget)
    tally = Counter()
    for seed in _seeds(args):
        try:
            rec = st.play_match(g, spec, alice, bob, seed)
        except st.HarnessError as exc:
            raise UsageError(str(exc)) from None
        outcome = rec.winner.label if rec.winner is not None else str(rec.score)
        tally[outcome] += 1
        note = "; ".join(rec.violations) or "-"
        _out("\t".join([str(seed), outcome, str(rec.score if rec.score is not None else "-"),
                        format_moves(rec.transcript), note]))
    _err("# " + " ".join(f"{k}={v}" for k, v in sorted(tally.items())))
    return EXIT_OK


# --- parser --------------------------------------------------------------------------

def _positive(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {s!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _player(s: str) -> Player:
    if s.upper() not in ("A", "B"):
        raise argparse.ArgumentTypeError(f"first player must be A or B, got {s!r}")
    return Player(s.upper())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="domgame", description="Exact analysis of the domatic game.")
    sub = p.add_subparsers(dest="command", required=True)

    def game_opts(q, palette=True):
        q.add_argument("input", help="graph file (edge list)")
        q.add_argument("--first", type=_player, default=Player.A, help="first player, A or B")
        q.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="search node budget")
        if palette:
            q.add_argument("--palette", "-k", type=_positive, required=True, help="number of colors")
            q.add_argument("--variant", choices=[v.value for v in Variant if v is not Variant.BOBGOOD],
                           default="win")

    q = sub.add_parser("solve", help="winner or score of one game")
    game_opts(q)
    q.add_argument("--line", action="store_true", help="also print a principal line")
    q.set_defaults(func=cmd_solve)

    q = sub.add_parser("gamenumber", help="largest palette Alice wins with")
    game_opts(q, palette=False)
    q.set_defaults(func=cmd_gamenumber)

    q = sub.add_parser("gen", help="write a construction as a graph file")
    q.add_argument("family", choices=FAMILIES)
    gen_help = {"n": "vertex count (zelinka, two-pendant, path, cycle, complete, empty)",
                "copies": "cliques, tree: number of copies", "size": "cliques: clique order",
                "k": "tree: height parameter (2^k - 1 vertices per copy)", "l": "matching: number of edges",
                "t": "clique-tree: cliques have order 2t+1", "s": "clique-tree: number of cliques"}
    for name, text in gen_help.items():
        q.add_argument(f"--{name}", type=_positive, help=text)
    q.add_argument("--doubled", action="store_true", help="tree: two disjoint copies")
    q.set_defaults(func=cmd_gen)

    q = sub.add_parser("verify", help="check the bound catalog")
    q.add_argument("--corpus", help="e.g. 'n<=4', 'n=5', '3..5'")
    q.add_argument("--file", action="append", help="graph file (repeatable)")
    q.add_argument("--report", action="append", help="stored JSON report to check without solving")
    q.add_argument("--bounds", default="all", help="comma-separated bound ids or aliases, or 'all'")
    q.add_argument("--all", dest="bounds", action="store_const", const="all",
                   help="same as --bounds all")
    q.add_argument("--ceiling", type=_positive, help="largest palette in score tables (default n+1)")
    q.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                   help="node budget per solve; exceeded quantities become gaps")
    q.add_argument("--workers", type=_positive, default=1, help="worker processes for the corpus")
    q.add_argument("--glue-max-h", type=_positive, default=4, help="largest H in the gluing catalog")
    q.add_argument("--glue-max-union", type=_positive, default=7,
                   help="largest glued graph in the gluing catalog")
    q.add_argument("--glue-max-ell", type=_positive, default=3, help="largest l in the gluing cases")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("match", help="play named policies against each other")
    game_opts(q)
    q.add_argument("--alice", choices=ALICE_POLICIES, default="random")
    q.add_argument("--bob", choices=BOB_POLICIES, default="random")
    q.add_argument("--seed", type=int, default=0, help="first seed")
    q.add_argument("--seeds", type=int, default=1, help="number of consecutive seeds")
    q.set_defaults(func=cmd_match)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExhausted as exc:
        _err(f"domgame: budget exhausted: {exc}")
        return EXIT_BUDGET
    except (UsageError, FormatError, GraphError, GameError, HypergraphError) as exc:
        _err(f"domgame: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
