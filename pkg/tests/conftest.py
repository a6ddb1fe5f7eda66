import sys

import pytest
from hypothesis import strategies as st

from grundygeo.rulesets import DagGame, dag_from_children

sys.setrecursionlimit(10_000)


def brute_nimber(game) -> int:
    """Plain recursion over the game tree: no memo, no DAG, no shared code."""
    seen = {brute_nimber(o) for o in game.options()}
    k = 0
    while k in seen:
        k += 1
    return k


def brute_tree_size(game) -> int:
    return 1 + sum(brute_tree_size(o) for o in game.options())


def path_dag(n_edges: int):
    return dag_from_children([[i + 1] for i in range(n_edges)] + [[]])


@st.composite
def small_dags(draw, max_nodes=7):
    """Random DAG rooted at 0 with edges to larger ids (duplicates allowed)."""
    n = draw(st.integers(1, max_nodes))
    children = []
    for i in range(n):
        later = list(range(i + 1, n))
        if later:
            children.append(draw(st.lists(st.sampled_from(later), max_size=3)))
        else:
            children.append([])
    return dag_from_children(children)


@st.composite
def small_dag_games(draw, max_nodes=7):
    return DagGame.root(draw(small_dags(max_nodes)))


@pytest.fixture
def diamond():
    # root -> {x, y}, x -> z, y -> z
    return dag_from_children([[1, 2], [3], [3], []])
