"""Parte que retiene sus propios vértices antes de enviarlos."""
from typing import List

from ..dag import Vertex
from ..network.delay import to_ticks
from .base import ByzantineBehavior, ByzantineMode, ByzantineSpec


class DelayOwnBroadcastBehavior(ByzantineBehavior):
    mode = ByzantineMode.DELAY_OWN_BROADCAST

    def __init__(self, spec: ByzantineSpec):
        super().__init__(spec)
        self.delay = to_ticks(spec.amount or 0.0)

    def send_delay(self) -> int:
        return self.delay

    def outgoing(self, vertex: Vertex) -> List[Vertex]:
        return [vertex]
