import os
import subprocess
import sys
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

import oracle
from conftest import CORPUS4, graphs
from domgame._kernels import KERNELS, PY_KERNELS
from domgame.constructions import gen_disjoint_cliques, gen_k4_pendant, gen_matching
from domgame.game import (ColoringState, GameError, GameSpec, Player, Variant, apply_move,
                          terminal_score)
from domgame.graph import Graph
from domgame.solver import (BudgetExhausted, Solver, game_number, solve, solve_alicegood,
                            solve_bobgood, solve_restricted_score, solve_score, solve_win)

A, B = Player.A, Player.B
K2 = Graph.complete(2)
BACKENDS = pytest.mark.parametrize("kernels", [KERNELS, PY_KERNELS], ids=["default", "python"])


def value(g, spec, kernels=KERNELS):
    return Solver(g, spec, kernels=kernels).value()


def test_solve_win_examples():
    assert solve_win(K2, A, 2) is B
    assert solve_win(K2, B, 2) is A
    for g in CORPUS4:
        assert solve_win(g, A, 1) is A and solve_win(g, B, 1) is A


def test_solve_score_examples():
    assert solve_score(K2, B, 2) == 2
    assert solve_score(gen_disjoint_cliques(3, 3), A, 3) == 1
    assert solve_score(Graph.cycle(5), A, 1) == 1


def test_restricted_score_examples():
    r2 = solve_restricted_score(K2, A, 2)
    s2 = solve_score(K2, A, 2)
    assert s2 <= r2 <= s2 + 1
    # Alice opens with color 2; Bob's forced color 1 completes both classes
    assert r2 == 2
    assert solve_restricted_score(Graph.path(4), B, 1) == 1
    seq = [solve_restricted_score(Graph.cycle(4), A, s) for s in (1, 2, 3)]
    assert seq == sorted(seq)


def test_bobgood_examples():
    p4, c4 = Graph.path(4), Graph.cycle(4)
    assert solve_bobgood(p4, {0, 3}, A, 2)
    assert solve_bobgood(c4, {0, 1}, A, 2)
    # Bob first these pairs are not BobGood; see the gadget findings
    assert not solve_bobgood(p4, {0, 3}, B, 2)
    assert not solve_bobgood(c4, {0, 1}, B, 2)
    for g in CORPUS4:
        for x in (A, B):
            for k in (1, 2, 3):
                assert solve_bobgood(g, set(), x, k) == (solve_win(g, x, k) is B)


def test_alicegood_examples():
    assert solve_alicegood(Graph.complete(3), {0}, A, 2) is False  # K2 with Alice first
    assert solve_alicegood(Graph.complete(3), {0}, B, 2) is True   # K2 with Bob first
    p4 = Graph.path(4)
    assert solve_alicegood(p4, {0}, A, 2) == oracle.alice_wins(3, Graph.path(3).edges(), 2, "A")
    assert solve_alicegood(p4, set(), B, 2) == (solve_win(p4, B, 2) is A)
    with pytest.raises(GameError):
        solve_alicegood(K2, {0, 1}, A, 2)


def test_game_number_examples():
    assert game_number(gen_matching(2), B) == 2
    h = gen_k4_pendant()
    assert game_number(h, A) == 2 and game_number(h, B) == 1
    assert game_number(Graph.complete(1), A) == 1 == game_number(Graph.complete(1), B)


@BACKENDS
@pytest.mark.parametrize("g", CORPUS4, ids=str)
def test_oracle_equivalence(g, kernels):
    edges = g.edges()
    for k in range(1, 5):
        for x in (A, B):
            assert value(g, GameSpec(k, x, Variant.SCORE), kernels) == oracle.minimax(g.n, edges, k, x.value)
            assert value(g, GameSpec(k, x, Variant.RESTRICTED_BOB), kernels) == \
                oracle.minimax(g.n, edges, k, x.value, restricted=True)
            won = Solver(g, GameSpec(k, x), kernels=kernels).alice_wins()
            assert won == oracle.alice_wins(g.n, edges, k, x.value)


@BACKENDS
@pytest.mark.parametrize("g", [Graph.path(4), Graph.cycle(4), Graph.star(3), Graph.cycle(5)], ids=str)
def test_bobgood_matches_oracle(g, kernels):
    for size in (1, 2):
        for ex in combinations(range(g.n), size):
            rel = [v for v in range(g.n) if v not in ex]
            for x in (A, B):
                for k in (2, 3):
                    spec = GameSpec(k, x, Variant.BOBGOOD, ex)
                    got = Solver(g, spec, kernels=kernels).alice_wins()
                    assert got == oracle.alice_wins(g.n, g.edges(), k, x.value, rel)


@given(graphs(max_n=5), st.integers(1, 4), st.sampled_from([A, B]))
def test_hypothesis_oracle_equivalence(g, k, x):
    assert solve_score(g, x, k) == oracle.minimax(g.n, g.edges(), k, x.value)


@pytest.mark.parametrize("g", CORPUS4, ids=str)
def test_score_theory(g):
    for x in (A, B):
        d = game_number(g, x)
        wins = [solve_win(g, x, k) is A for k in range(1, 6)]
        assert all(a >= b for a, b in zip(wins, wins[1:]))  # monotone
        for ell in range(1, 6):
            s = solve_score(g, x, ell)
            if ell <= d:
                assert s == ell
            else:
                assert s >= d - 1
                assert s < Fraction(d, d + 1) * ell + 1
            r = solve_restricted_score(g, x, ell)
            assert s <= r <= s + 1
            if ell > 1:
                assert solve_restricted_score(g, x, ell - 1) <= r
    a, b = game_number(g, A), game_number(g, B)
    assert b <= 2 * a + 1 and a <= 2 * b + 1


@pytest.mark.parametrize("g", CORPUS4, ids=str)
def test_dominating_bobgood(g):
    universal = sorted(g.universal_vertices())
    for size in range(1, len(universal) + 1):
        for ell_set in combinations(universal, size):
            if len(ell_set) == g.n:
                continue
            for x in (A, B):
                assert solve_bobgood(g, ell_set, x, game_number(g, x) + 1)


def test_principal_line_realizes_value():
    g = gen_disjoint_cliques(2, 3)
    for x in (A, B):
        spec = GameSpec(3, x, Variant.SCORE)
        res = solve(g, spec, with_line=True)
        s = ColoringState.initial(g.n)
        for m in res.principal_line:
            s = apply_move(s, m, spec)
        assert s.is_terminal and terminal_score(g, s, 3) == res.value
        # deterministic
        assert solve(g, spec, with_line=True).principal_line == res.principal_line


def test_solve_result_fields():
    res = solve(K2, GameSpec(2, A))
    assert res.winner is B and res.value == 1 and res.nodes_expanded > 0
    res = solve(K2, GameSpec(2, B, Variant.SCORE))
    assert res.winner is None and res.value == 2


@BACKENDS
def test_budget_exhaustion_is_an_error(kernels):
    g = gen_disjoint_cliques(3, 3)
    with pytest.raises(BudgetExhausted):
        Solver(g, GameSpec(3, A, Variant.SCORE), budget=50, kernels=kernels).value()


def test_key_space_limit():
    with pytest.raises(GameError):
        Solver(Graph.empty(40), GameSpec(3))


def test_shared_solver_reuses_table():
    s = Solver(gen_disjoint_cliques(2, 3), GameSpec(3, A, Variant.SCORE))
    s.value()
    first = s.nodes_expanded
    s.value()
    assert s.nodes_expanded - first <= 2


def test_fallback_backend_in_subprocess():
    code = ("from domgame import BACKEND, game_number; from domgame.graph import Graph;"
            "from domgame.constructions import gen_k4_pendant;"
            "print(BACKEND, game_number(gen_k4_pendant(), 'A'), game_number(gen_k4_pendant(), 'B'))")
    env = dict(os.environ, DOMGAME_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "2", "1"]
