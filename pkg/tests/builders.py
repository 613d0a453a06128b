"""Construcción de DAGs a mano para los tests."""
from typing import Dict, Iterable, Optional, Sequence, Tuple

from src.dag import DagView, Vertex, genesis_vertices

Key = Tuple[int, int]


def build_vertices(n: int, layers: Sequence[Dict[int, Iterable[int]]]) -> Dict[Key, Vertex]:
    """layers[i] describe la ronda i+1: source -> sources referenciados en la ronda anterior."""
    vertices: Dict[Key, Vertex] = {(0, g.source): g for g in genesis_vertices(n)}
    for r, layer in enumerate(layers, start=1):
        for source in sorted(layer):
            edges = frozenset(vertices[(r - 1, p)].id for p in layer[source])
            vertices[(r, source)] = Vertex(round=r, source=source, block=f"b{r}.{source}".encode(), edges=edges)
    return vertices


def build_view(n: int, f: int, layers: Sequence[Dict[int, Iterable[int]]]) -> Tuple[DagView, Dict[Key, Vertex]]:
    vertices = build_vertices(n, layers)
    view = DagView.bootstrap(n, f)
    for key in sorted(vertices):
        if key[0] > 0:
            view.insert(vertices[key])
    return view, vertices


def full(n: int, sources: Optional[Iterable[int]] = None) -> Dict[int, Tuple[int, ...]]:
    """Capa donde cada source referencia a todos los de la ronda anterior."""
    everyone = tuple(range(n))
    return {s: everyone for s in (sources if sources is not None else everyone)}
