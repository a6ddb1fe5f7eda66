import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grundygeo.core import SumGame, build_dag, nimber_of
from grundygeo.rulesets import (
    DagGame,
    Nim,
    NodeKayles,
    all_kayles_graphs,
    dag_from_children,
    dag_options,
    kayles_options,
    nim_options,
    star_game,
)

from .conftest import brute_nimber, small_dag_games


def test_nim_options():
    assert nim_options(Nim((0,))) == []
    assert nim_options(Nim((2,))) == [Nim((1,)), Nim((0,))]
    opts = nim_options(Nim((1, 1)))
    assert opts == [Nim((0, 1)), Nim((1, 0))]
    assert {o.key() for o in opts} == {b"nim:1"}


def test_nim_key_canonical():
    assert Nim((1, 3, 0, 2)).key() == Nim((3, 2, 1)).key() == b"nim:3,2,1"
    with pytest.raises(ValueError):
        Nim((-1,))


@pytest.mark.parametrize("k", [0, 1, 7])
def test_star_value(k):
    assert brute_nimber(star_game(k)) == k
    assert nimber_of(star_game(k)) == k


def test_star_options_are_smaller_stars():
    assert {o.key() for o in star_game(4).options()} == {star_game(j).key() for j in range(4)}


@pytest.mark.parametrize("a", range(9))
def test_star_sums(a):
    for b in range(9):
        assert nimber_of(SumGame(star_game(a), star_game(b))) == a ^ b


def test_kayles_options():
    assert kayles_options(NodeKayles.from_edges([], [])) == []
    edge = NodeKayles.from_edges([0, 1], [(0, 1)])
    opts = kayles_options(edge)
    assert len(opts) == 2 and all(o.is_terminal() for o in opts)
    assert nimber_of(edge) == 1


def test_kayles_path3():
    assert brute_nimber(NodeKayles.path(3)) == 2
    assert nimber_of(NodeKayles.path(3)) == 2


def test_kayles_rejects_bad_graphs():
    with pytest.raises(ValueError):
        NodeKayles.from_edges([0], [(0, 0)])
    with pytest.raises(ValueError):
        NodeKayles.from_edges([0], [(0, 1)])


def test_kayles_exhaustive_four_vertices():
    for g in all_kayles_graphs(4):
        assert nimber_of(g) == brute_nimber(g)
        for o in g.options():
            assert o.size() < g.size()


def test_dag_options(diamond):
    assert dag_options(DagGame(diamond, 3)) == []
    assert [p.current for p in dag_options(DagGame(diamond, 0))] == [1, 2]
    assert nimber_of(DagGame.root(diamond)) == 0
    with pytest.raises(KeyError):
        DagGame(diamond, 9)


def test_dag_from_children_rejects_cycles():
    with pytest.raises(ValueError):
        dag_from_children([[1], [0]])
    with pytest.raises(ValueError):
        dag_from_children([[5]])


@settings(max_examples=50, deadline=None)
@given(
    st.one_of(
        st.lists(st.integers(0, 4), max_size=4).map(lambda p: Nim(tuple(p))),
        st.integers(0, 6).map(NodeKayles.path),
        small_dag_games(),
    )
)
def test_terminal_iff_no_options_and_sizes_shrink(g):
    for p in [g, *g.options()]:
        assert p.is_terminal() == (not p.options())
    for o in g.options():
        assert o.size() <= g.size()


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 3), max_size=3).map(lambda p: Nim(tuple(p))))
def test_explicit_dag_round_trip(g):
    assert nimber_of(DagGame.root(build_dag(g))) == nimber_of(g)
