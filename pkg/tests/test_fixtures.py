import time

import pytest

from src.consensus import OrderingVariant
from src.errors import ConfigError
from src.harness import FIGURES, Figure, check_safety, check_skip_soundness, replay_figure, replay_fixture, run_checks

ALL = (0, 1, 2, 3)
NO_A1 = (1, 2, 3)


@pytest.mark.parametrize('name', sorted(FIGURES))
def test_fixture_is_fast_and_safe(name):
    start = time.perf_counter()
    result = replay_fixture(name)
    assert time.perf_counter() - start < 1.0
    assert all(check.passed for check in run_checks(result.report, result.scenario))


def test_unknown_fixture():
    with pytest.raises(ConfigError):
        replay_fixture('fig9')


def test_fig2_causal_history_of_a2():
    result = replay_fixture('fig2')
    v = result.vertices
    a2 = result.anchor('A2')
    history = result.report.views[0].causal_history(a2)
    expected = {a2} | {v[(r, s)] for r in (1, 2, 3) for s in (0, 1, 2)} | {v[(0, s)] for s in ALL}
    assert history == expected
    assert v[(3, 3)] not in history


def test_fig2_commits_a1_directly():
    result = replay_fixture('fig2')
    for p in ALL:
        assert result.direct_commits(p) == {'A1': 3}


def test_fig3_a2_committed_with_three_votes():
    result = replay_fixture('fig3')
    view = result.report.views[0]
    assert view.get_anchor(4) == result.anchor('A2')
    for p in ALL:
        assert result.direct_commits(p) == {'A2': 3}
        # A1 se ordena sólo por el camino desde A2
        assert result.ordered_anchors(p) == ['A1', 'A2']
        assert result.skipped(p) == []


def test_fig4_views_disagree_on_a1():
    result = replay_fixture('fig4')
    assert result.direct_commits(1) == {'A1': 2, 'A2': 3}
    assert result.direct_commits(0) == {'A2': 3}
    assert 'A1' not in result.direct_commits(0)
    for p in ALL:
        assert result.ordered_anchors(p) == ['A1', 'A2']
    logs = result.report.logs
    assert logs[0] == logs[1]
    assert check_skip_soundness(result.report).passed


def test_fig5_skips_a2_and_orders_a1_before_a3():
    result = replay_fixture('fig5')
    for p in ALL:
        assert result.direct_commits(p) == {'A3': 3}
        assert result.ordered_anchors(p) == ['A1', 'A3']
        assert result.skipped(p) == ['A2']
    assert not any(o.anchor_round == 4 for o in result.report.observations)


def test_fig5_paths_from_a3():
    result = replay_fixture('fig5')
    view = result.report.views[0]
    a1, a2, a3 = result.anchor('A1'), result.anchor('A2'), result.anchor('A3')
    assert a2 in view
    assert not view.path(a3, a2)
    assert view.path(a3, a1)


def test_fig5_a1_history_precedes_a3_history():
    result = replay_fixture('fig5')
    view = result.report.views[1]
    a1, a3 = result.anchor('A1'), result.anchor('A3')
    log = result.report.logs[1]
    a1_history = {u.id for u in view.causal_history(a1)}
    assert set(log[:len(a1_history)]) == a1_history
    assert log[len(a1_history) - 1] == a1.id
    assert log[-1] == a3.id


def test_no_walk_back_variant_breaks_safety_on_fig4():
    result = replay_fixture('fig4', OrderingVariant.NO_WALK_BACK)
    check = check_safety(result.report)
    assert not check.passed
    assert "posición 7" in check.detail
    assert check.event is not None


WEAK_VOTE = Figure(
    name='weak_vote',
    description="A1 con un único voto; p1 recibe r4/p0 al final",
    parents={
        **{(1, p): ALL for p in ALL},
        **{(2, p): ALL for p in ALL},
        (3, 0): ALL, (3, 1): NO_A1, (3, 2): NO_A1, (3, 3): NO_A1,
        (4, 0): (0, 1, 2), (4, 1): NO_A1, (4, 2): NO_A1, (4, 3): NO_A1,
        **{(5, p): NO_A1 for p in ALL},
        (6, 0): (0, 1, 2),
    },
    late={1: ((4, 0),)},
)


def test_weak_threshold_variant_breaks_skip_soundness():
    broken = replay_figure(WEAK_VOTE, OrderingVariant.WEAK_THRESHOLD)
    check = check_skip_soundness(broken.report)
    assert not check.passed
    assert broken.skipped(1) == ['A1']
    assert broken.direct_commits(0) == {'A1': 1, 'A2': 3}

    sound = replay_figure(WEAK_VOTE)
    assert check_skip_soundness(sound.report).passed
    assert all(sound.skipped(p) == ['A1'] for p in ALL)
