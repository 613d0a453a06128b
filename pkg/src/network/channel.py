"""
Broadcast confiable y no-equivocante idealizado.

Garantiza las propiedades del DAG que necesita el ordenamiento:
- Non-equivocation: un único vértice por (source, round) se entrega;
- Reliability: cada vértice aceptado se programa para las n partes;
- Validity: un vértice se inserta sólo cuando todos sus padres están en la vista.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from ..dag import DagView, Vertex, VertexId
from ..errors import InvalidVertex
from .delay import DelayModel, delivery_rng

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Delivery:
    at: int
    to: int
    vertex: Vertex


@dataclass(frozen=True)
class EquivocationAttempt:
    at: int
    source: int
    round: int
    recorded: VertexId
    dropped: VertexId


class BroadcastChannel:
    def __init__(self, n: int, delay: DelayModel, seed: int):
        self.n = n
        self.delay = delay
        self.seed = seed
        self.sent: Dict[Tuple[int, int], VertexId] = {}
        self.sent_at: Dict[VertexId, int] = {}
        self.pending: List[Dict[VertexId, Vertex]] = [dict() for _ in range(n)]
        self.equivocations: List[EquivocationAttempt] = []

    def broadcast(self, source: int, v: Vertex, now: int, extra_delay: int = 0) -> List[Delivery]:
        """Registra el vértice y devuelve una entrega por parte (la propia es inmediata)."""
        if v.source != source:
            raise InvalidVertex(f"p{source} no puede difundir un vértice de p{v.source}")

        key = (source, v.round)
        recorded = self.sent.get(key)
        if recorded is not None:
            if recorded != v.id:
                logger.warning("intento de equivocación de p%d en la ronda %d descartado", source, v.round)
                self.equivocations.append(EquivocationAttempt(now, source, v.round, recorded, v.id))
            return []

        self.sent[key] = v.id
        self.sent_at[v.id] = now
        deliveries = []
        for to in range(self.n):
            if to == source:
                at = now
            else:
                rng = delivery_rng(self.seed, source, v.round, to)
                at = self.delay.arrival(rng, now + extra_delay)
            deliveries.append(Delivery(at=at, to=to, vertex=v))
        return deliveries

    def deliver(self, to: int, v: Vertex, view: DagView) -> List[Vertex]:
        """
        Entrega un vértice a una parte, con buffering causal.

        Returns:
            Los vértices insertados en la vista, en orden de inserción
        """
        buffer = self.pending[to]
        if v.id in view or v.id in buffer:
            return []
        if not self._parents_present(v, view):
            buffer[v.id] = v
            return []

        view.insert(v)
        inserted = [v]
        progress = True
        while progress and buffer:
            progress = False
            for vertex_id, waiting in list(buffer.items()):
                if self._parents_present(waiting, view):
                    del buffer[vertex_id]
                    view.insert(waiting)
                    inserted.append(waiting)
                    progress = True
        return inserted

    @staticmethod
    def _parents_present(v: Vertex, view: DagView) -> bool:
        return all(edge in view for edge in v.edges)

    def pending_count(self) -> int:
        return sum(len(b) for b in self.pending)
