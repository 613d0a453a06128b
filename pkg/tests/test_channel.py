import pytest
from hypothesis import given, settings, strategies as st

from src.dag import DagView, Vertex
from src.errors import InvalidVertex
from src.network import BroadcastChannel, DelayKind, DelayModel, delivery_rng, format_time, from_ticks, to_ticks

from .builders import build_vertices, full

FAR_GST = 10 ** 9


def test_time_is_fixed_point():
    assert to_ticks(1.5) == 1500
    assert from_ticks(1234) == 1.234
    assert format_time(1234) == "1.234"
    assert format_time(5) == "0.005"


def test_delivery_rng_is_split_per_receiver():
    a = delivery_rng(7, 1, 3, 2).random()
    assert a == delivery_rng(7, 1, 3, 2).random()
    assert a != delivery_rng(7, 1, 3, 0).random()
    assert a != delivery_rng(8, 1, 3, 2).random()


def test_post_gst_uniform_is_bounded():
    model = DelayModel(DelayKind.UNIFORM, low=0, high=50000, post_gst_bound=1000, gst=0)
    for receiver in range(20):
        at = model.arrival(delivery_rng(0, 0, 1, receiver), 300)
        assert 300 <= at <= 1300


def test_post_gst_fixed_is_exactly_the_bound():
    model = DelayModel(DelayKind.FIXED, low=5000, high=5000, post_gst_bound=1000, gst=0)
    assert model.arrival(delivery_rng(0, 0, 1, 1), 300) == 1300


def test_pre_gst_delays_are_capped_at_gst_plus_bound():
    model = DelayModel(DelayKind.FIXED, low=50000, high=50000, post_gst_bound=1000, gst=10000)
    assert model.arrival(delivery_rng(0, 0, 1, 1), 0) == 11000
    model = DelayModel(DelayKind.FIXED, low=2000, high=2000, post_gst_bound=1000, gst=10000)
    assert model.arrival(delivery_rng(0, 0, 1, 1), 0) == 2000


@settings(max_examples=200, deadline=None)
@given(
    kind=st.sampled_from(list(DelayKind)),
    low=st.integers(min_value=0, max_value=20000),
    spread=st.integers(min_value=0, max_value=20000),
    bound=st.integers(min_value=0, max_value=5000),
    gst=st.integers(min_value=0, max_value=100000),
    sent_at=st.integers(min_value=0, max_value=200000),
    seed=st.integers(min_value=0, max_value=2 ** 32),
)
def test_every_message_arrives_by_max_of_send_and_gst_plus_bound(kind, low, spread, bound, gst, sent_at, seed):
    model = DelayModel(kind, low=low, high=low + spread, post_gst_bound=bound, gst=gst)
    at = model.arrival(delivery_rng(seed, 0, 1, 1), sent_at)
    assert sent_at <= at <= max(sent_at, gst) + bound


def make_channel(n=4, delay=2000):
    model = DelayModel(DelayKind.FIXED, low=delay, high=delay, post_gst_bound=1000, gst=FAR_GST)
    return BroadcastChannel(n, model, seed=0)


def test_broadcast_schedules_one_delivery_per_party():
    channel = make_channel()
    v = build_vertices(4, [full(4)])[(1, 2)]
    deliveries = channel.broadcast(2, v, now=100)
    assert sorted(d.to for d in deliveries) == [0, 1, 2, 3]
    by_party = {d.to: d.at for d in deliveries}
    assert by_party[2] == 100
    assert by_party[0] == by_party[1] == by_party[3] == 2100
    assert channel.sent[(2, 1)] == v.id
    assert channel.sent_at[v.id] == 100


def test_extra_delay_postpones_remote_deliveries():
    channel = make_channel()
    v = build_vertices(4, [full(4)])[(1, 0)]
    by_party = {d.to: d.at for d in channel.broadcast(0, v, now=0, extra_delay=500)}
    assert by_party[0] == 0
    assert by_party[1] == 2500


def test_broadcast_rejects_foreign_vertex():
    channel = make_channel()
    v = build_vertices(4, [full(4)])[(1, 0)]
    with pytest.raises(InvalidVertex):
        channel.broadcast(1, v, now=0)


def test_second_vertex_for_same_round_is_dropped():
    channel = make_channel()
    v = build_vertices(4, [full(4)])[(1, 0)]
    twin = Vertex(round=1, source=0, block=v.block + b"/twin", edges=v.edges)
    assert len(channel.broadcast(0, v, now=0)) == 4
    assert channel.broadcast(0, twin, now=1) == []
    assert len(channel.equivocations) == 1
    attempt = channel.equivocations[0]
    assert attempt.recorded == v.id
    assert attempt.dropped == twin.id
    assert (attempt.source, attempt.round) == (0, 1)
    # reenviar el mismo vértice no es equivocación
    assert channel.broadcast(0, v, now=2) == []
    assert len(channel.equivocations) == 1


def test_deliver_buffers_until_parents_present():
    channel = make_channel()
    vertices = build_vertices(4, [full(4, sources=(0, 1, 2)), {0: (0, 1, 2)}])
    view = DagView.bootstrap(4, 1)

    child = vertices[(2, 0)]
    assert channel.deliver(0, child, view) == []
    assert channel.pending_count() == 1
    assert child not in view

    assert channel.deliver(0, vertices[(1, 0)], view) == [vertices[(1, 0)]]
    assert channel.deliver(0, vertices[(1, 1)], view) == [vertices[(1, 1)]]
    assert channel.deliver(0, vertices[(1, 2)], view) == [vertices[(1, 2)], child]
    assert channel.pending_count() == 0
    assert child in view


def test_deliver_ignores_duplicates():
    channel = make_channel()
    v = build_vertices(4, [full(4)])[(1, 3)]
    view = DagView.bootstrap(4, 1)
    assert channel.deliver(1, v, view) == [v]
    assert channel.deliver(1, v, view) == []
