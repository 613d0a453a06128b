"""Parte que se cae después de una ronda."""
import logging
from typing import List

from ..dag import Vertex
from .base import ByzantineBehavior, ByzantineMode, ByzantineSpec

logger = logging.getLogger(__name__)


class CrashBehavior(ByzantineBehavior):
    """Difunde normalmente hasta `after_round` inclusive y luego deja de procesar todo."""

    mode = ByzantineMode.CRASH

    def __init__(self, spec: ByzantineSpec):
        super().__init__(spec)
        self.after_round = spec.after_round if spec.after_round is not None else 0
        self.crashed = False

    @property
    def active(self) -> bool:
        return not self.crashed

    def outgoing(self, vertex: Vertex) -> List[Vertex]:
        if self.crashed:
            return []
        if vertex.round > self.after_round:
            logger.info("p%d se cae antes de la ronda %d", self.party, vertex.round)
            self.crashed = True
            return []
        return [vertex]
