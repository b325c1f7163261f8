"""Exact solver for multi-player discounted-sum games on graphs.

All rationals cross the boundary as exact "p/q" strings; games and profiles
travel as their canonical JSON documents.
"""

from ._core import (
    Game,
    ParseError,
    ValidationError,
    classic_nash,
    decide,
    export_smt,
    figure,
    from_dimacs,
    oracle_value,
    punishment_values,
    random_game,
    scale,
    solve,
    verify,
)

__all__ = [
    "Game",
    "ParseError",
    "ValidationError",
    "classic_nash",
    "decide",
    "export_smt",
    "figure",
    "from_dimacs",
    "oracle_value",
    "punishment_values",
    "random_game",
    "scale",
    "solve",
    "verify",
]
