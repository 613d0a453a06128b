"""
Lógica de ordenamiento de Bullshark (parcialmente síncrono).

Cada parte interpreta su vista local del DAG sin enviar mensajes extra:
las anclas se comprometen con f+1 votos y las anclas anteriores se ordenan
(o se saltean) según exista un camino desde la siguiente ancla ordenada.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Set

from ..dag import DagView, Vertex, VertexId

logger = logging.getLogger(__name__)


class OrderingVariant(Enum):
    """Variantes de ordenamiento. Las dos últimas están rotas a propósito (sólo para tests)."""
    STANDARD = "standard"
    NO_WALK_BACK = "no_walk_back"
    WEAK_THRESHOLD = "weak_threshold"


@dataclass(frozen=True)
class CommitObservation:
    """Registro de un compromiso directo de ancla."""
    anchor: Vertex
    votes: int
    trigger: VertexId


@dataclass(frozen=True)
class SkippedAnchor:
    """Ronda par que el recorrido hacia atrás pasó sin ordenar su ancla."""
    round: int
    anchor: Optional[VertexId]
    by_anchor: VertexId


@dataclass(frozen=True)
class OrderedAnchor:
    """Ancla ordenada, con el vértice que disparó el compromiso."""
    anchor: Vertex
    trigger: VertexId
    trigger_round: int
    direct: bool


@dataclass
class OrderingState:
    ordered_vertices: Set[str] = field(default_factory=set)
    last_ordered_round: int = 0
    ordered_anchors_stack: List[Vertex] = field(default_factory=list)
    committed_log: List[VertexId] = field(default_factory=list)
    observations: List[CommitObservation] = field(default_factory=list)
    skips: List[SkippedAnchor] = field(default_factory=list)
    anchors: List[OrderedAnchor] = field(default_factory=list)


class Ordering:
    """Máquina de estados de ordenamiento de una parte."""

    def __init__(self, n: int, f: int, variant: OrderingVariant = OrderingVariant.STANDARD):
        self.n = n
        self.f = f
        self.variant = variant
        self.state = OrderingState()

    @property
    def commit_threshold(self) -> int:
        if self.variant is OrderingVariant.WEAK_THRESHOLD:
            return self.f
        return self.f + 1

    @property
    def committed_log(self) -> List[VertexId]:
        return self.state.committed_log

    def count_votes(self, view: DagView, v: Vertex, anchor: Vertex) -> int:
        """Vértices entre las aristas de v que tienen camino al ancla."""
        return sum(1 for edge in v.edges if view.path(view.get(edge), anchor))

    def try_committing(self, view: DagView, v: Vertex) -> List[VertexId]:
        """
        Se invoca una vez por cada vértice recién insertado.

        Returns:
            Sufijo del log comprometido agregado por esta llamada (posiblemente vacío).
        """
        if v.round % 2 == 1 or v.round == 0:
            return []
        if v.round - 2 <= 0:
            # la ronda 0 no tiene ancla
            return []

        anchor = view.get_anchor(v.round - 2)
        if anchor is None:
            return []

        votes = self.count_votes(view, v, anchor)
        if votes < self.commit_threshold:
            return []

        if anchor.round <= self.state.last_ordered_round:
            logger.debug("ancla %s ya ordenada; se ignora el disparo de %s", anchor, v)
            return []

        logger.info("ancla %s comprometida con %d votos (disparo %s)", anchor, votes, v)
        self.state.observations.append(CommitObservation(anchor=anchor, votes=votes, trigger=v.id))
        start = len(self.state.committed_log)
        self.order_anchors(view, anchor, trigger=v)
        return self.state.committed_log[start:]

    def order_anchors(self, view: DagView, anchor: Vertex, trigger: Optional[Vertex] = None) -> None:
        """Apila el ancla y las anteriores con camino desde ella; luego ordena sus historias."""
        state = self.state
        trigger_id = trigger.id if trigger is not None else anchor.id
        trigger_round = trigger.round if trigger is not None else anchor.round + 2

        state.ordered_anchors_stack.append(anchor)
        pushed = [OrderedAnchor(anchor, trigger_id, trigger_round, direct=True)]

        current = anchor
        r = anchor.round - 2
        while r > state.last_ordered_round and self.variant is not OrderingVariant.NO_WALK_BACK:
            prev_anchor = view.get_anchor(r)
            if prev_anchor is not None and view.path(current, prev_anchor):
                state.ordered_anchors_stack.append(prev_anchor)
                pushed.append(OrderedAnchor(prev_anchor, trigger_id, trigger_round, direct=False))
                current = prev_anchor
            else:
                logger.info("ancla de la ronda %d salteada al ordenar %s", r, anchor)
                state.skips.append(SkippedAnchor(
                    round=r,
                    anchor=prev_anchor.id if prev_anchor is not None else None,
                    by_anchor=anchor.id,
                ))
            r -= 2

        state.anchors.extend(reversed(pushed))
        state.last_ordered_round = anchor.round
        self.order_history(view)

    def order_history(self, view: DagView) -> List[VertexId]:
        """Desapila las anclas (la más antigua primero) y ordena sus historias causales por (round, source)."""
        state = self.state
        appended: List[VertexId] = []
        while state.ordered_anchors_stack:
            anchor = state.ordered_anchors_stack.pop()
            to_order = [u for u in view.causal_history(anchor) if u.id not in state.ordered_vertices]
            for u in sorted(to_order, key=Vertex.sort_key):
                state.ordered_vertices.add(u.id)
                state.committed_log.append(u.id)
                appended.append(u.id)
        return appended


def commit_log_lines(view: DagView, log: List[VertexId]) -> List[str]:
    """Formato de exportación: una línea por vértice ordenado."""
    lines = []
    for seq, vertex_id in enumerate(log):
        vertex = view.get(vertex_id)
        lines.append(f"seq={seq} round={vertex.round} source={vertex.source} id={vertex.short_id}")
    return lines
