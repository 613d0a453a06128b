"""Clase base para comportamientos bizantinos."""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

from ..dag import DagView, Vertex, VertexId


class ByzantineMode(Enum):
    CRASH = "crash"
    SILENT = "silent"
    AVOID_ANCHOR_EDGES = "avoid_anchor_edges"
    DELAY_OWN_BROADCAST = "delay_own_broadcast"
    ATTEMPT_EQUIVOCATION = "attempt_equivocation"


@dataclass(frozen=True)
class ByzantineSpec:
    """Una entrada del roster bizantino de un escenario."""
    party: int
    mode: ByzantineMode
    after_round: Optional[int] = None
    amount: Optional[float] = None

    def __str__(self):
        extra = ""
        if self.after_round is not None:
            extra = f"(after_round={self.after_round})"
        elif self.amount is not None:
            extra = f"(amount={self.amount})"
        return f"p{self.party}:{self.mode.value}{extra}"


class ByzantineBehavior(ABC):
    """
    Una parte bizantina corre el mismo motor de rondas que una honesta;
    el comportamiento intercepta lo que emite y cómo elige aristas.
    """

    mode: ByzantineMode

    def __init__(self, spec: ByzantineSpec):
        self.spec = spec
        self.party = spec.party

    @property
    def active(self) -> bool:
        """False cuando la parte dejó de procesar eventos."""
        return True

    def filter_edges(self, view: DagView, r: int, edges: List[VertexId]) -> List[VertexId]:
        return edges

    def send_delay(self) -> int:
        """Retardo extra (en ticks) antes de enviar un vértice propio a los demás."""
        return 0

    @abstractmethod
    def outgoing(self, vertex: Vertex) -> List[Vertex]:
        """
        Decide qué se envía en lugar del vértice producido por el protocolo.

        Args:
            vertex: El vértice que una parte honesta difundiría

        Returns:
            Lista de vértices a difundir (posiblemente vacía)
        """
        pass

    def __str__(self):
        return str(self.spec)
