import json

import pytest

from src.errors import DagError
from src.harness import replay_fixture
from src.utils import export_dot, export_jsonl, load_jsonl, parse_int_list, parse_seed_range


def test_dot_styles_committed_and_uncommitted_anchors():
    result = replay_fixture('fig3')
    view = result.report.views[0]
    committed = [o.anchor_id for o in result.report.observations if o.party == 0]
    dot = export_dot(view, committed=committed)
    a1, a2 = result.anchor('A1'), result.anchor('A2')

    assert dot.startswith('digraph dag {')
    node_lines = {line.split()[0].strip('"'): line for line in dot.splitlines() if '[' in line and '->' not in line}
    assert 'xlabel="committed"' in node_lines[a2.short_id]
    assert 'xlabel="uncommitted"' in node_lines[a1.short_id]
    assert f'label="{a1.label}"' in node_lines[a1.short_id]
    # una arista por referencia
    edges = [line for line in dot.splitlines() if '->' in line]
    assert len(edges) == sum(len(v.edges) for v in view.vertices())


def test_dot_marks_skipped_anchor():
    result = replay_fixture('fig5')
    view = result.report.views[1]
    skipped = [s.anchor_id for s in result.report.skips if s.party == 1 and s.anchor_id]
    dot = export_dot(view, skipped=skipped)
    a2 = result.anchor('A2')
    [line] = [line for line in dot.splitlines() if line.strip().startswith(f'"{a2.short_id}" [')]
    assert 'xlabel="skipped"' in line


def test_dot_marks_anchor_ordered_by_walking_back():
    result = replay_fixture('fig5')
    report = result.report
    view = report.views[0]
    dot = export_dot(
        view,
        committed=[o.anchor_id for o in report.observations if o.party == 0],
        skipped=[s.anchor_id for s in report.skips if s.party == 0 and s.anchor_id],
        ordered=[a.anchor_id for a in report.anchors if a.party == 0 and not a.direct],
    )
    node_lines = {line.split()[0].strip('"'): line for line in dot.splitlines() if '[' in line and '->' not in line}
    a1, a2, a3 = result.anchor('A1'), result.anchor('A2'), result.anchor('A3')
    assert 'xlabel="uncommitted"' in node_lines[a1.short_id]
    assert 'tooltip="ordered"' in node_lines[a1.short_id]
    assert 'peripheries=2' in node_lines[a1.short_id]
    assert 'xlabel="skipped"' in node_lines[a2.short_id]
    assert 'xlabel="committed"' in node_lines[a3.short_id]
    assert 'tooltip="ordered"' not in node_lines[a3.short_id]


def test_jsonl_reloads_into_an_identical_view():
    view = replay_fixture('fig4').report.views[2]
    text = export_jsonl(view)
    records = [json.loads(line) for line in text.splitlines()]
    assert len(records) == len(view)
    assert [(r['round'], r['source']) for r in records] == sorted((r['round'], r['source']) for r in records)

    reloaded = load_jsonl(text, n=4, f=1)
    assert reloaded.ids() == view.ids()
    assert export_jsonl(reloaded) == text


def test_jsonl_rejects_tampered_ids():
    view = replay_fixture('fig2').report.views[0]
    lines = export_jsonl(view).splitlines()
    record = json.loads(lines[5])
    record['block'] = b'otro'.hex()
    lines[5] = json.dumps(record, sort_keys=True)
    with pytest.raises(ValueError):
        load_jsonl('\n'.join(lines), n=4, f=1)


def test_jsonl_out_of_order_is_rejected():
    view = replay_fixture('fig2').report.views[0]
    lines = export_jsonl(view).splitlines()
    with pytest.raises(DagError):
        load_jsonl('\n'.join(reversed(lines)), n=4, f=1)


def test_parse_seed_range():
    assert parse_seed_range('0..999') == range(0, 1000)
    assert parse_seed_range(' 5 .. 7 ') == range(5, 8)
    assert parse_seed_range('42') == range(42, 43)
    for bad in ('9..3', 'a..b', '1-5', ''):
        with pytest.raises(ValueError):
            parse_seed_range(bad)


def test_parse_int_list():
    assert parse_int_list('4,7,10') == [4, 7, 10]
    assert parse_int_list('4, 7') == [4, 7]
    with pytest.raises(ValueError):
        parse_int_list('4,x')
