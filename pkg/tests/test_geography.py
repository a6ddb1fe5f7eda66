import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grundygeo.core import build_dag, nimber_of
from grundygeo.generate import SplitMix64, corpus, random_dag
from grundygeo.geography import (
    EdgeGeography,
    GeoGraph,
    VertexGeography,
    dag_as_geography,
    edge_geo_options,
    export,
    geo_options,
    import_json,
    max_nimber_sweep,
    to_dot,
    vertex_values,
)
from grundygeo.reduction import build_t_chain
from grundygeo.rulesets import DagGame, Nim, star_game

from .conftest import small_dags


def geo(vertices, edges, token):
    return GeoGraph(frozenset(vertices), frozenset(edges), token)


def brute_geo(g: GeoGraph) -> int:
    """Vertex Geography by direct recursion on materialized graphs."""
    vals = {brute_geo(o) for o in geo_options(g)}
    k = 0
    while k in vals:
        k += 1
    return k


def brute_edge_geo(g: GeoGraph) -> int:
    vals = {brute_edge_geo(o) for o in edge_geo_options(g)}
    k = 0
    while k in vals:
        k += 1
    return k


@st.composite
def small_digraphs(draw, max_vertices=5):
    n = draw(st.integers(1, max_vertices))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    edges = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return geo(range(n), edges, draw(st.integers(0, n - 1)))


def test_isolated_token():
    g = geo([0], [], 0)
    assert geo_options(g) == [] and edge_geo_options(g) == []
    assert nimber_of(VertexGeography.of(g)) == 0
    assert nimber_of(EdgeGeography.of(g)) == 0


@pytest.mark.parametrize("k", range(6))
def test_directed_path_parity(k):
    g = geo(range(k + 1), [(i, i + 1) for i in range(k)], 0)
    assert nimber_of(VertexGeography.of(g)) == k % 2


def test_geo_options_deletes_token_vertex():
    g = geo([0, 1, 2], [(0, 1), (1, 0), (1, 2)], 0)
    (opt,) = geo_options(g)
    assert opt.token == 1 and opt.vertices == {1, 2} and opt.edges == {(1, 2)}


def test_t_chain_value():
    g = build_t_chain(4).as_geography()
    assert nimber_of(VertexGeography.of(g.with_token("t_2"))) == 2


def test_edge_geography_single_edge_and_two_cycle():
    assert nimber_of(EdgeGeography.of(geo([0, 1], [(0, 1)], 0))) == 1
    two_cycle = geo([0, 1], [(0, 1), (1, 0)], 0)
    assert brute_edge_geo(two_cycle) == 0
    assert nimber_of(EdgeGeography.of(two_cycle)) == 0
    # vertex Geography on the same graph stops after one move
    assert nimber_of(VertexGeography.of(two_cycle)) == 1


@settings(max_examples=150, deadline=None)
@given(small_digraphs())
def test_vertex_solver_matches_brute_force(g):
    expected = brute_geo(g)
    assert nimber_of(VertexGeography.of(g)) == expected
    assert nimber_of(VertexGeography.of(g, prune=False)) == expected


@settings(max_examples=80, deadline=None)
@given(small_digraphs(4))
def test_edge_solver_matches_brute_force(g):
    assert nimber_of(EdgeGeography.of(g)) == brute_edge_geo(g)


def test_dag_as_geography_examples():
    single = dag_as_geography(build_dag(Nim(())))
    assert len(single.vertices) == 1 and not single.edges
    assert nimber_of(VertexGeography.of(single)) == 0
    star3 = dag_as_geography(build_dag(star_game(3)))
    assert len(star3.vertices) == 4
    assert brute_geo(star3) == 3
    assert brute_geo(dag_as_geography(build_dag(Nim((1, 2))))) == 3


@settings(max_examples=80, deadline=None)
@given(small_dags(8))
def test_dag_embedding_preserves_nimber(d):
    g = dag_as_geography(d)
    assert brute_geo(g) == d.nimber()


def test_deletion_irrelevance_on_corpus_dags():
    # full deletion-tracking search vs the static DAG recursion
    dags = [g.dag for g in corpus(2026, 300) if isinstance(g, DagGame)]
    assert len(dags) == 100 and max(len(d) for d in dags) <= 60
    for d in dags:
        g = dag_as_geography(d)
        full = VertexGeography.of(g, prune=False)
        assert nimber_of(full, 2_000_000) == d.nimber()
        assert vertex_values(g)[g.token] == d.nimber()


def test_dag_play_never_repeats_a_key():
    d = random_dag(SplitMix64(3), 30, 0.1)
    start = VertexGeography.of(dag_as_geography(d), prune=False)
    seen = set()
    stack = [(start, frozenset())]
    while stack:
        p, path = stack.pop()
        assert p.key() not in path
        seen.add(p.key())
        stack.extend((o, path | {p.key()}) for o in p.options())


def test_dag_as_geography_rejects_cycles():
    from grundygeo.core import GameDag

    with pytest.raises(ValueError):
        dag_as_geography(GameDag((b"a", b"b"), ((1,), (0,)), 0))


def test_geograph_validation():
    with pytest.raises(ValueError):
        geo([0], [(0, 0)], 0)
    with pytest.raises(ValueError):
        geo([0], [], 1)
    with pytest.raises(ValueError):
        geo([0], [(0, 1)], 0)


def test_json_export_minimal():
    data = json.loads(export(geo([0], [], 0), "json"))
    assert data == {"vertices": [0], "edges": [], "token": 0, "labels": {}}


@settings(max_examples=60, deadline=None)
@given(small_digraphs())
def test_json_round_trip(g):
    assert import_json(export(g, "json")) == g


def test_json_round_trip_with_labels():
    g = GeoGraph(frozenset(["start", "b_0", 3]), frozenset([("start", "b_0"), ("b_0", 3)]), "start", {"start": "start", "b_0": "b_0", 3: "payload"})
    back = import_json(export(g))
    assert back == g and back.labels == g.labels


def test_import_rejects_self_loops_and_duplicates():
    with pytest.raises(ValueError):
        import_json('{"vertices": [0], "edges": [[0, 0]], "token": 0}')
    with pytest.raises(ValueError):
        import_json('{"vertices": [0, 1], "edges": [[0, 1], [0, 1]], "token": 0}')


def test_dot_t_chain():
    dot = to_dot(build_t_chain(4).as_geography())
    assert dot.count("->") == 3
    for u, v in [("t_2", "t_1"), ("t_2", "t_0"), ("t_1", "t_0")]:
        assert f'"{u}" -> "{v}";' in dot
    assert 'shape=doublecircle' in dot and dot.index("doublecircle") > dot.index('"t_2"')
    assert export(build_t_chain(4).as_geography(), "dot").decode() == dot


def test_sweep_small():
    assert max_nimber_sweep(1).max_nimber == 0
    assert max_nimber_sweep(2).max_nimber == 1


def test_sweep_three_vertices_matches_brute_force():
    r = max_nimber_sweep(3, None)
    assert r.max_nimber == 2
    assert brute_geo(r.witness) == 2
    iso = max_nimber_sweep(3, None, up_to_isomorphism=True)
    assert iso.max_nimber == 2 and iso.graphs_checked < r.graphs_checked


def test_sweep_counts_graphs():
    # loop-free digraphs on n labelled vertices: 2^(n(n-1))
    assert max_nimber_sweep(3, None).graphs_checked == 1 + 4 + 64


@settings(max_examples=30, deadline=None)
@given(small_digraphs(4))
def test_bitmask_values_match_solver(g):
    from grundygeo.geography import _bitmask_values

    n = len(g.vertices)
    out = tuple(sum(1 << v for (u, v) in g.edges if u == w) for w in range(n))
    assert _bitmask_values(out)[g.token] == nimber_of(VertexGeography.of(g))
