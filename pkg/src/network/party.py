"""Una parte del sistema: vista local, ordenamiento y motor de rondas."""
from typing import List, Optional

from ..byzantine import ByzantineBehavior
from ..consensus import Ordering, OrderingVariant, PartyConfig, RoundEngine
from ..dag import DagView, Vertex, VertexId


class Party:
    """
    Estado aislado de una parte. Sin motor (`passive=True`) la parte sólo recibe
    vértices y los ordena; así se reproducen las figuras con entregas explícitas.
    """

    def __init__(self, party_id: int, n: int, f: int, timeout: int,
                 max_round: Optional[int] = None,
                 variant: OrderingVariant = OrderingVariant.STANDARD,
                 behavior: Optional[ByzantineBehavior] = None,
                 passive: bool = False):
        self.id = party_id
        self.view = DagView.bootstrap(n, f)
        self.ordering = Ordering(n, f, variant)
        self.behavior = behavior
        self.engine: Optional[RoundEngine] = None
        if not passive:
            edge_filter = behavior.filter_edges if behavior is not None else None
            self.engine = RoundEngine(PartyConfig(party_id, n, f, timeout, max_round), edge_filter)
        # vértices no-génesis en el orden en que entraron a la vista
        self.insertion_order: List[VertexId] = []

    @property
    def honest(self) -> bool:
        return self.behavior is None

    @property
    def active(self) -> bool:
        return self.behavior is None or self.behavior.active

    @property
    def current_round(self) -> int:
        return self.engine.current_round if self.engine is not None else self.view.max_round

    @property
    def committed_log(self) -> List[VertexId]:
        return self.ordering.committed_log

    def outgoing(self, vertex: Vertex) -> List[Vertex]:
        if self.behavior is None:
            return [vertex]
        return self.behavior.outgoing(vertex)

    def send_delay(self) -> int:
        return self.behavior.send_delay() if self.behavior is not None else 0

    def __str__(self):
        kind = "honesta" if self.honest else str(self.behavior)
        return f"p{self.id} ({kind})"
