"""
Avance de rondas de una parte.

Una parte necesita n-f vértices de la ronda actual para avanzar. Además:
- en rondas pares espera el ancla (o que expire el timer);
- en rondas impares espera f+1 votos al ancla anterior, 2f+1 no-votos, o el timer.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Set, Tuple, Union

from ..dag import DagView, Vertex, VertexId
from ..errors import ConfigError, PrematureTimeout

logger = logging.getLogger(__name__)

EdgeFilter = Callable[[DagView, int, List[VertexId]], List[VertexId]]


@dataclass(frozen=True)
class PartyConfig:
    self_id: int
    n: int
    f: int
    timeout: int
    max_round: Optional[int] = None

    def __post_init__(self):
        if self.f < 0:
            raise ConfigError("f debe ser no negativo", field='f')
        if self.n < 3 * self.f + 1:
            raise ConfigError(f"n={self.n} viola n >= 3f+1 con f={self.f}", field='n')
        if not 0 <= self.self_id < self.n:
            raise ConfigError(f"parte {self.self_id} fuera de [0, {self.n})", field='party')

    @property
    def quorum(self) -> int:
        return self.n - self.f


@dataclass
class RoundState:
    current_round: int = 0
    timer_round: Optional[int] = None
    timer_deadline: Optional[int] = None
    expired: Set[int] = field(default_factory=set)
    broadcast_rounds: Set[int] = field(default_factory=set)

    @property
    def timer_armed(self) -> bool:
        return self.timer_round is not None


@dataclass(frozen=True)
class Broadcast:
    vertex: Vertex


@dataclass(frozen=True)
class ArmTimer:
    round: int
    deadline: int


Command = Union[Broadcast, ArmTimer]


def default_payload(party: int, r: int) -> bytes:
    return f"tx:{party}:{r}".encode()


class RoundEngine:
    """Reactor determinista: consume entregas y timeouts, emite broadcasts y timers."""

    def __init__(self, config: PartyConfig, edge_filter: Optional[EdgeFilter] = None):
        self.config = config
        self.state = RoundState()
        self.edge_filter = edge_filter
        self.finished = False
        # (ronda, tiempo) de cada timer que realmente expiró
        self.timeouts: List[Tuple[int, int]] = []

    @property
    def current_round(self) -> int:
        return self.state.current_round

    def start(self, view: DagView, now: int) -> List[Command]:
        return self._advance(view, now)

    def on_vertex_delivered(self, view: DagView, v: Vertex, now: int) -> List[Command]:
        if self.finished:
            return []
        return self._advance(view, now)

    def on_timeout(self, view: DagView, r: int, now: int) -> List[Command]:
        state = self.state
        if self.finished or r != state.current_round or state.timer_round != r:
            logger.debug("p%d: timer de la ronda %d obsoleto", self.config.self_id, r)
            return []
        present = len(view.round_vertices(r))
        if present < self.config.quorum:
            raise PrematureTimeout(
                f"p{self.config.self_id}: timer de la ronda {r} con {present} < {self.config.quorum} vértices"
            )
        logger.info("p%d: expiró el timer de la ronda %d", self.config.self_id, r)
        state.expired.add(r)
        self.timeouts.append((r, now))
        return self._advance(view, now)

    def advance_ready(self, view: DagView, r: int) -> bool:
        cfg = self.config
        present = view.round_vertices(r)
        if len(present) < cfg.quorum:
            return False
        if r == 0 or r in self.state.expired:
            return True
        if r % 2 == 0:
            return view.get_anchor(r) is not None

        if r - 1 == 0:
            return True
        anchor = view.get_anchor(r - 1)
        if anchor is None:
            return True
        votes = sum(1 for v in present.values() if anchor.id in v.edges)
        return votes >= cfg.f + 1 or len(present) - votes >= 2 * cfg.f + 1

    def pick_edges(self, view: DagView, r: int) -> List[VertexId]:
        """Todos los vértices presentes en la ronda r, ordenados por source."""
        present = view.round_vertices(r)
        return [present[source].id for source in sorted(present)]

    def _advance(self, view: DagView, now: int) -> List[Command]:
        cfg = self.config
        state = self.state
        commands: List[Command] = []

        while self.advance_ready(view, state.current_round):
            next_round = state.current_round + 1
            if cfg.max_round is not None and next_round > cfg.max_round:
                self.finished = True
                state.timer_round = state.timer_deadline = None
                return commands
            edges = self.pick_edges(view, state.current_round)
            if self.edge_filter is not None:
                edges = self.edge_filter(view, state.current_round, edges)
            vertex = Vertex(
                round=next_round,
                source=cfg.self_id,
                block=default_payload(cfg.self_id, next_round),
                edges=frozenset(edges),
            )
            state.broadcast_rounds.add(next_round)
            state.current_round = next_round
            state.timer_round = state.timer_deadline = None
            commands.append(Broadcast(vertex))
            logger.debug("p%d avanza a la ronda %d con %d aristas", cfg.self_id, next_round, len(edges))

        r = state.current_round
        if state.timer_round != r and len(view.round_vertices(r)) >= cfg.quorum:
            state.timer_round = r
            state.timer_deadline = now + cfg.timeout
            commands.append(ArmTimer(round=r, deadline=state.timer_deadline))
            logger.debug("p%d arma timer para la ronda %d (vence %d)", cfg.self_id, r, state.timer_deadline)
        return commands
