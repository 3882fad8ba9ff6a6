"""Compare the numba kernels with the pure Python / numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both paths must agree on every instance; timings exclude compilation.
"""
import argparse
import time

import numpy as np

from domgame._accel import compile_now
from domgame._kernels import PY_KERNELS, build_kernels, graph_code_loop, graph_code_numpy
from domgame.constructions import _code_tables, gen_disjoint_cliques, gen_k4_pendant, gen_tree_graph
from domgame.game import GameSpec, Player, Variant
from domgame.graph import Graph
from domgame.solver import Solver

SOLVER_CASES = [
    ("C6 win A k=2", Graph.cycle(6), GameSpec(2, Player.A)),
    ("K4+pendant score B k=3", gen_k4_pendant(), GameSpec(3, Player.B, Variant.SCORE)),
    ("P7 score A k=3", Graph.path(7), GameSpec(3, Player.A, Variant.SCORE)),
    ("3K3 score A k=3", gen_disjoint_cliques(3, 3), GameSpec(3, Player.A, Variant.SCORE)),
    ("2G' win B k=2", gen_tree_graph(3, 2).graph, GameSpec(2, Player.B)),
]


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def bench_solver(repeat):
    jit = build_kernels(compile_now, jitted=True)
    print(f"{'solver instance':28s} {'python s':>10s} {'numba s':>10s} {'speedup':>8s} {'nodes':>9s}")
    for name, g, spec in SOLVER_CASES:
        Solver(g, spec, kernels=jit).solve()  # compile for this signature
        tp, rp = best_of(lambda: Solver(g, spec, kernels=PY_KERNELS).solve(), repeat)
        tn, rn = best_of(lambda: Solver(g, spec, kernels=jit).solve(), repeat)
        assert rp.value == rn.value and rp.nodes_expanded == rn.nodes_expanded, name
        print(f"{name:28s} {tp:10.4f} {tn:10.4f} {tp / tn:8.1f} {rn.nodes_expanded:9d}")


def bench_canon(repeat):
    loop = compile_now(graph_code_loop)
    rng = np.random.default_rng(0)
    print(f"\n{'canonical code':28s} {'numpy s':>10s} {'numba s':>10s} {'speedup':>8s}")
    for n in (5, 6, 7):
        perms, pi, pj = _code_tables(n)
        graphs = []
        for _ in range(20):
            a = np.triu(rng.integers(0, 2, size=(n, n)), 1)
            graphs.append((a + a.T).astype(np.int64))
        loop(graphs[0], perms, pi, pj)  # compile
        tp, cp = best_of(lambda: [graph_code_numpy(a, perms, pi, pj)[0] for a in graphs], repeat)
        tn, cn = best_of(lambda: [loop(a, perms, pi, pj)[0] for a in graphs], repeat)
        assert [int(x) for x in cp] == [int(x) for x in cn]
        print(f"{'20 graphs, n=' + str(n):28s} {tp:10.4f} {tn:10.4f} {tp / tn:8.1f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    bench_solver(args.repeat)
    bench_canon(args.repeat)
