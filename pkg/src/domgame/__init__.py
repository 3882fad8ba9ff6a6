"""Exact analysis of the domatic game on small graphs.

Alice and Bob alternately color the vertices of a graph from a palette of k
colors; Alice wins when every color class is a dominating set. This package
solves the game and its score variants exactly, plays scripted strategies
against exhaustive adversaries, builds the extremal constructions, and checks
the known inequalities over corpora of small graphs.
"""
from ._accel import BACKEND
from .game import GameError, GameSpec, Move, ColoringState, Player, Variant
from .graph import Graph, GraphError, domatic_number, domination_number
from .solver import (BudgetExhausted, SolveResult, Solver, game_number, solve, solve_alicegood,
                     solve_bobgood, solve_restricted_score, solve_score, solve_win)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BudgetExhausted", "ColoringState", "GameError", "GameSpec", "Graph", "GraphError",
    "Move", "Player", "SolveResult", "Solver", "Variant", "domatic_number", "domination_number",
    "game_number", "solve", "solve_alicegood", "solve_bobgood", "solve_restricted_score",
    "solve_score", "solve_win",
]
