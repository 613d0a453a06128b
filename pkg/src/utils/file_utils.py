"""Exportación e importación de vistas del DAG y escritura de salidas."""
import json
import sys
from pathlib import Path
from typing import Iterable, Optional

from ..dag import DagView, Vertex, is_anchor_round, leader


def _is_anchor(view: DagView, v: Vertex) -> bool:
    return is_anchor_round(v.round) and v.source == leader(v.round, view.n)


def export_dot(view: DagView, committed: Iterable[str] = (), skipped: Iterable[str] = (),
               ordered: Iterable[str] = ()) -> str:
    """
    Exporta la vista en formato DOT.
    Un nodo por vértice ("r<round>/p<source>"), una arista por referencia;
    las anclas se destacan y se anotan como comprometidas, salteadas o pendientes.
    Las anclas ordenadas sólo al recorrer hacia atrás siguen sin compromiso directo
    pero llevan borde doble y tooltip="ordered".
    """
    committed = set(committed)
    skipped = set(skipped)
    ordered = set(ordered)
    lines = ['digraph dag {', '  rankdir=RL;', '  node [shape=circle, fontsize=10];']
    for v in view.vertices():
        attrs = [f'label="{v.label}"']
        if _is_anchor(view, v):
            if v.id in committed:
                attrs += ['style=filled', 'fillcolor="green"', 'xlabel="committed"']
            elif v.id in skipped:
                attrs += ['style="filled,dashed"', 'fillcolor="lightgray"', 'xlabel="skipped"']
            elif v.id in ordered:
                attrs += ['style=filled', 'fillcolor="lightblue"', 'peripheries=2', 'xlabel="uncommitted"',
                          'tooltip="ordered"']
            else:
                attrs += ['style="filled,dashed"', 'fillcolor="palegreen"', 'xlabel="uncommitted"']
        lines.append(f'  "{v.short_id}" [{", ".join(attrs)}];')
    for v in view.vertices():
        for parent in sorted((view.get(e) for e in v.edges), key=Vertex.sort_key):
            lines.append(f'  "{v.short_id}" -> "{parent.short_id}";')
    lines.append('}')
    return '\n'.join(lines) + '\n'


def export_jsonl(view: DagView) -> str:
    """Un registro JSON por línea, en orden (round, source)."""
    lines = []
    for v in view.vertices():
        record = {
            'id': v.id,
            'round': v.round,
            'source': v.source,
            'edges': sorted(v.edges),
            'block': v.block.hex(),
        }
        lines.append(json.dumps(record, sort_keys=True))
    return '\n'.join(lines) + '\n'


def load_jsonl(text: str, n: int, f: int) -> DagView:
    """Reconstruye una vista desde export_jsonl. Verifica que cada id coincida con su contenido."""
    view = DagView(n, f)
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        record = json.loads(line)
        vertex = Vertex(
            round=record['round'],
            source=record['source'],
            block=bytes.fromhex(record.get('block', '')),
            edges=frozenset(record['edges']),
        )
        if vertex.id != record['id']:
            raise ValueError(f"línea {number}: el id {record['id'][:8]} no coincide con el contenido")
        view.insert(vertex)
    return view


def write_output(content: str, out: Optional[str] = None) -> Optional[str]:
    """Escribe en `out` o en stdout. Devuelve la ruta escrita."""
    if out is None:
        sys.stdout.write(content)
        return None
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content, encoding='utf-8')
    return str(path)
