"""Parte que intenta difundir dos vértices distintos por ronda."""
from typing import List

from ..dag import Vertex
from .base import ByzantineBehavior, ByzantineMode


class AttemptEquivocationBehavior(ByzantineBehavior):
    """El canal no-equivocante descarta el segundo vértice; esto ejercita esa ruta."""

    mode = ByzantineMode.ATTEMPT_EQUIVOCATION

    def outgoing(self, vertex: Vertex) -> List[Vertex]:
        twin = Vertex(
            round=vertex.round,
            source=vertex.source,
            block=vertex.block + b'/twin',
            edges=vertex.edges,
        )
        return [vertex, twin]
