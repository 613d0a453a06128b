"""Parte que nunca difunde."""
from typing import List

from ..dag import Vertex
from .base import ByzantineBehavior, ByzantineMode


class SilentBehavior(ByzantineBehavior):
    mode = ByzantineMode.SILENT

    def outgoing(self, vertex: Vertex) -> List[Vertex]:
        return []
