import pytest
from hypothesis import given, settings, strategies as st

from src.dag import DagView, Vertex, genesis_vertices, is_anchor_round, leader
from src.errors import Equivocation, InvalidVertex, MissingParents, OddRound, TooFewEdges

from .builders import build_view, build_vertices, full


def test_leader_mapping_round_robin():
    assert [leader(r, 4) for r in (2, 4, 6, 8, 10)] == [0, 1, 2, 3, 0]
    assert leader(2, 7) == 0
    assert leader(16, 7) == 0
    assert not is_anchor_round(0)
    assert not is_anchor_round(3)
    assert is_anchor_round(2)


def test_vertex_id_is_content_hash():
    a = Vertex(round=1, source=0, block=b"x", edges={g.id for g in genesis_vertices(4)})
    b = Vertex(round=1, source=0, block=b"x", edges=frozenset(g.id for g in genesis_vertices(4)))
    c = Vertex(round=1, source=0, block=b"y", edges=a.edges)
    assert a.id == b.id
    assert a.id != c.id
    assert len(a.id) == 64
    assert a.label == "r1/p0"


def test_genesis_ids_are_distinct():
    ids = {g.id for g in genesis_vertices(7)}
    assert len(ids) == 7


def test_bootstrap_contains_genesis():
    view = DagView.bootstrap(4, 1)
    assert len(view) == 4
    assert view.max_round == 0
    assert sorted(view.round_vertices(0)) == [0, 1, 2, 3]


def test_insert_duplicate_is_noop():
    view, vertices = build_view(4, 1, [full(4)])
    assert view.insert(vertices[(1, 0)]) is False
    assert len(view) == 8


def test_insert_equivocation_rejected():
    view, vertices = build_view(4, 1, [full(4)])
    twin = Vertex(round=1, source=0, block=b"otro", edges=vertices[(1, 0)].edges)
    with pytest.raises(Equivocation) as exc:
        view.insert(twin)
    assert exc.value.existing == vertices[(1, 0)].id
    assert exc.value.offending == twin.id


def test_insert_requires_quorum_edges():
    view = DagView.bootstrap(4, 1)
    genesis = genesis_vertices(4)
    v = Vertex(round=1, source=0, edges={genesis[0].id, genesis[1].id})
    with pytest.raises(TooFewEdges):
        view.insert(v)


def test_insert_missing_parents_lists_them():
    vertices = build_vertices(4, [full(4), full(4)])
    view = DagView.bootstrap(4, 1)
    v = vertices[(2, 0)]
    with pytest.raises(MissingParents) as exc:
        view.insert(v)
    assert exc.value.missing == sorted(v.edges)
    assert v not in view


def test_insert_rejects_edges_outside_previous_round():
    vertices = build_vertices(4, [full(4)])
    view = DagView.bootstrap(4, 1)
    for s in range(4):
        view.insert(vertices[(1, s)])
    genesis = genesis_vertices(4)
    mixed = Vertex(round=2, source=0, edges={vertices[(1, 0)].id, vertices[(1, 1)].id, genesis[2].id})
    with pytest.raises(InvalidVertex):
        view.insert(mixed)


def test_insert_rejects_unknown_source():
    view = DagView.bootstrap(4, 1)
    with pytest.raises(InvalidVertex):
        view.insert(Vertex(round=1, source=4, edges={g.id for g in genesis_vertices(4)}))


def test_path_examples():
    # r2/p3 no referencia a r1/p0
    view, v = build_view(4, 1, [full(4), {0: (0, 1, 2), 1: (0, 1, 2), 2: (0, 1, 2), 3: (1, 2, 3)}])
    assert view.path(v[(2, 0)], v[(1, 0)])
    assert not view.path(v[(2, 3)], v[(1, 0)])
    assert view.path(v[(2, 3)], v[(0, 0)])
    assert view.path(v[(1, 2)], v[(1, 2)])
    assert not view.path(v[(1, 2)], v[(1, 3)])
    # las aristas apuntan hacia atrás
    assert not view.path(v[(1, 0)], v[(2, 0)])
    assert not view.path(v[(2, 0)], None)


def test_path_to_absent_vertex_is_false():
    view, v = build_view(4, 1, [full(4)])
    stranger = Vertex(round=1, source=0, block=b"nunca", edges=v[(1, 0)].edges)
    assert not view.path(v[(1, 1)], stranger)


def test_causal_history_example():
    view, v = build_view(4, 1, [full(4), {0: (1, 2, 3), 1: full(4)[1], 2: full(4)[2], 3: full(4)[3]}])
    history = view.causal_history(v[(2, 0)])
    assert v[(2, 0)] in history
    assert v[(1, 0)] not in history
    assert {v[(1, 1)], v[(1, 2)], v[(1, 3)]} <= history
    # la génesis entera es alcanzable a través de cualquier vértice de ronda 1
    assert all(v[(0, s)] in history for s in range(4))
    assert len(history) == 1 + 3 + 4


def test_get_anchor_only_on_even_rounds():
    view, v = build_view(4, 1, [full(4), full(4), full(4), full(4, sources=(0, 2, 3))])
    assert view.get_anchor(2) == v[(2, 0)]
    assert view.get_anchor(4) is None
    with pytest.raises(OddRound):
        view.get_anchor(3)
    with pytest.raises(OddRound):
        view.get_anchor(0)


@st.composite
def random_dags(draw):
    """DAG válido al azar: cada ronda tiene al menos n-f vértices, cada uno con al menos n-f aristas."""
    n = draw(st.integers(min_value=4, max_value=7))
    f = (n - 1) // 3
    quorum = n - f
    rounds = draw(st.integers(min_value=1, max_value=10))
    layers = []
    previous = list(range(n))
    for _ in range(rounds):
        present = draw(st.lists(st.sampled_from(range(n)), min_size=quorum, max_size=n, unique=True))
        layer = {}
        for source in present:
            refs = draw(st.lists(st.sampled_from(previous), min_size=quorum, max_size=len(previous), unique=True))
            layer[source] = tuple(refs)
        layers.append(layer)
        previous = sorted(present)
    return n, f, layers


def _reachable_oracle(view, start):
    """Alcanzabilidad por DFS recursivo, sin memo."""
    seen = set()

    def visit(vertex_id):
        if vertex_id in seen:
            return
        seen.add(vertex_id)
        for edge in view.get(vertex_id).edges:
            visit(edge)

    visit(start.id)
    return seen


@settings(max_examples=100, deadline=None)
@given(random_dags())
def test_path_matches_naive_reachability(dag):
    n, f, layers = dag
    view, _ = build_view(n, f, layers)
    everything = list(view.vertices())
    for v in everything:
        reachable = _reachable_oracle(view, v)
        for u in everything:
            assert view.path(v, u) == (u.id in reachable)


@settings(max_examples=100, deadline=None)
@given(random_dags())
def test_causal_history_matches_naive_reachability(dag):
    n, f, layers = dag
    view, _ = build_view(n, f, layers)
    for v in view.vertices():
        assert {u.id for u in view.causal_history(v)} == _reachable_oracle(view, v)
