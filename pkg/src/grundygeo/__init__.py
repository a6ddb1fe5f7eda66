"""Sprague-Grundy values of impartial games and their nimber-preserving
compilation into Generalized Geography."""

from .core import (
    Budget,
    BudgetExceeded,
    GameDag,
    GameTree,
    SumGame,
    build_dag,
    disjunctive_sum,
    mex,
    nim_sum,
    nimber_of,
    tree_sum_expand,
)
from .geography import GeoGraph, VertexGeography, EdgeGeography, dag_as_geography, max_nimber_sweep
from .primality import canonical_form, is_prime_game
from .reduction import build_qi_gadget, build_t_chain, encode_xor, grundy_bound, output_size_bound, reduce_to_geography
from .rulesets import DagGame, Nim, NodeKayles, star_game

__all__ = [
    "Budget",
    "BudgetExceeded",
    "DagGame",
    "EdgeGeography",
    "GameDag",
    "GameTree",
    "GeoGraph",
    "Nim",
    "NodeKayles",
    "SumGame",
    "VertexGeography",
    "build_dag",
    "build_qi_gadget",
    "build_t_chain",
    "canonical_form",
    "dag_as_geography",
    "disjunctive_sum",
    "encode_xor",
    "grundy_bound",
    "is_prime_game",
    "max_nimber_sweep",
    "mex",
    "nim_sum",
    "nimber_of",
    "output_size_bound",
    "reduce_to_geography",
    "star_game",
    "tree_sum_expand",
]
