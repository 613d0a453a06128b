"""Parte que sigue el protocolo pero se niega a votar por el ancla cuando puede."""
from typing import List

from ..dag import DagView, Vertex, VertexId, is_anchor_round
from .base import ByzantineBehavior, ByzantineMode


class AvoidAnchorEdgesBehavior(ByzantineBehavior):
    mode = ByzantineMode.AVOID_ANCHOR_EDGES

    def filter_edges(self, view: DagView, r: int, edges: List[VertexId]) -> List[VertexId]:
        if not is_anchor_round(r):
            return edges
        anchor = view.get_anchor(r)
        if anchor is None or anchor.id not in edges:
            return edges
        # sin el ancla todavía tiene que haber n-f aristas
        if len(edges) - 1 < view.quorum:
            return edges
        return [e for e in edges if e != anchor.id]

    def outgoing(self, vertex: Vertex) -> List[Vertex]:
        return [vertex]
