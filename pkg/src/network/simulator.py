"""
Simulador de eventos discretos.

Un único bucle de eventos procesa entregas, timers e inyecciones en orden
(time, seq). Toda la aleatoriedad sale de generadores sembrados por el escenario,
así que la traza completa es función pura del escenario.
"""
import heapq
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Dict, List, Optional, Tuple

from ..byzantine import create_behavior
from ..consensus import ArmTimer, Broadcast, Command, OrderingVariant, commit_log_lines
from ..dag import DagView, Vertex, VertexId, leader
from ..errors import NonTermination
from .channel import BroadcastChannel, EquivocationAttempt
from .delay import format_time, from_ticks, to_ticks
from .party import Party

if TYPE_CHECKING:
    from ..harness.scenario import Scenario

logger = logging.getLogger(__name__)


class EventKind(Enum):
    DELIVER = "deliver"
    TIMER = "timer"
    INJECT = "inject"


@dataclass(frozen=True)
class Event:
    time: int
    seq: int
    kind: EventKind
    party: int
    vertex: Optional[Vertex] = None
    round: Optional[int] = None


@dataclass(frozen=True)
class CommitRecord:
    time: int
    seq: int
    party: int
    position: int
    vertex_id: VertexId


@dataclass(frozen=True)
class ObservationRecord:
    time: int
    seq: int
    party: int
    anchor_round: int
    anchor_id: VertexId
    votes: int
    trigger: VertexId


@dataclass(frozen=True)
class SkipRecord:
    time: int
    seq: int
    party: int
    round: int
    anchor_id: Optional[VertexId]


@dataclass(frozen=True)
class AnchorRecord:
    time: int
    seq: int
    party: int
    round: int
    anchor_id: VertexId
    trigger_round: int
    direct: bool


@dataclass(frozen=True)
class TimeoutRecord:
    time: int
    seq: int
    party: int
    round: int


@dataclass
class SimulationReport:
    n: int
    f: int
    seed: int
    honest: List[int]
    behaviors: Dict[int, str]
    logs: Dict[int, List[VertexId]]
    views: Dict[int, DagView]
    rounds: Dict[int, int]
    commits: List[CommitRecord]
    observations: List[ObservationRecord]
    skips: List[SkipRecord]
    anchors: List[AnchorRecord]
    timeouts: List[TimeoutRecord]
    round_start: Dict[int, int]
    sent_at: Dict[VertexId, int]
    equivocations: List[EquivocationAttempt]
    pending: Dict[int, int]
    trace: List[str]
    events: int
    end_time: int
    quiescent: bool
    scenario_document: dict = field(default_factory=dict)
    last_seq: int = 0

    def trace_text(self) -> str:
        return "\n".join(self.trace) + "\n"

    def anchor_latencies(self) -> Dict[int, Dict[int, Tuple[int, float]]]:
        """ronda del ancla -> parte -> (latencia en rondas, latencia en tiempo)."""
        latencies: Dict[int, Dict[int, Tuple[int, float]]] = {}
        for record in self.anchors:
            sent = self.sent_at.get(record.anchor_id, record.time)
            latencies.setdefault(record.round, {})[record.party] = (
                record.trigger_round - record.round,
                from_ticks(record.time - sent),
            )
        return latencies

    def to_document(self) -> dict:
        """Documento estructurado (claves estables) para serializar en YAML."""
        parties = {}
        for p in sorted(self.logs):
            view = self.views[p]
            parties[p] = {
                'honest': p in self.honest,
                'behavior': self.behaviors.get(p),
                'round': self.rounds[p],
                'log_length': len(self.logs[p]),
                'log': commit_log_lines(view, self.logs[p]),
                'timeouts': [{'round': t.round, 'time': from_ticks(t.time)}
                             for t in self.timeouts if t.party == p],
                'pending': self.pending.get(p, 0),
            }

        anchors = {}
        latencies = self.anchor_latencies()
        for record in self.anchors:
            entry = anchors.setdefault(record.round, {
                'leader': leader(record.round, self.n),
                'id': record.anchor_id[:8],
                'sent_at': from_ticks(self.sent_at[record.anchor_id]) if record.anchor_id in self.sent_at else None,
                'commits': {},
            })
            rounds, elapsed = latencies[record.round][record.party]
            entry['commits'][record.party] = {
                'direct': record.direct,
                'trigger_round': record.trigger_round,
                'latency_rounds': rounds,
                'latency_time': elapsed,
            }

        return {
            'scenario': self.scenario_document,
            'events': self.events,
            'end_time': from_ticks(self.end_time),
            'quiescent': self.quiescent,
            'parties': parties,
            'anchors': anchors,
            'skips': [{'party': s.party, 'round': s.round, 'present': s.anchor_id is not None}
                      for s in self.skips],
            'violations': {
                'equivocation_attempts': [
                    {'source': e.source, 'round': e.round, 'time': from_ticks(e.at)} for e in self.equivocations
                ],
            },
        }


class Simulator:
    """
    Construye el DAG con n partes sobre un canal idealizado.

    Con `scripted=True` las partes son pasivas y sólo se procesan las entregas
    agregadas con `schedule_delivery` (reproducción de figuras).
    """

    def __init__(self, scenario: 'Scenario', variant: OrderingVariant = OrderingVariant.STANDARD,
                 scripted: bool = False):
        self.scenario = scenario
        self.n = scenario.n
        self.f = scenario.f
        self.max_events = scenario.max_events
        self.channel = BroadcastChannel(scenario.n, scenario.delay_model(), scenario.seed)

        roster = {spec.party: create_behavior(spec) for spec in scenario.byzantine}
        timeout = to_ticks(scenario.timeout)
        self.parties: List[Party] = [
            Party(p, scenario.n, scenario.f, timeout, scenario.rounds, variant,
                  behavior=roster.get(p), passive=scripted)
            for p in range(scenario.n)
        ]

        self.queue: List[Tuple[int, int, Event]] = []
        self._seq = 0
        self.now = 0
        self.events = 0
        self.last_seq = 0
        self.trace: List[str] = []

        self.commits: List[CommitRecord] = []
        self.observations: List[ObservationRecord] = []
        self.skips: List[SkipRecord] = []
        self.anchors: List[AnchorRecord] = []
        self.timeouts: List[TimeoutRecord] = []
        self.round_start: Dict[int, int] = {}

        if not scripted:
            for party in self.parties:
                self._push(0, EventKind.INJECT, party.id)

    @property
    def honest(self) -> List[Party]:
        return [p for p in self.parties if p.honest]

    def _push(self, time: int, kind: EventKind, party: int,
              vertex: Optional[Vertex] = None, round: Optional[int] = None) -> Event:
        event = Event(time=time, seq=self._seq, kind=kind, party=party, vertex=vertex, round=round)
        self._seq += 1
        heapq.heappush(self.queue, (event.time, event.seq, event))
        return event

    def schedule_delivery(self, vertex: Vertex, to: int, at: int) -> Event:
        return self._push(at, EventKind.DELIVER, to, vertex=vertex)

    def _log(self, event: Event, text: str) -> None:
        self.trace.append(f"t={format_time(event.time)} seq={event.seq} ev={text}")

    def step(self) -> Optional[Event]:
        """Procesa el próximo evento. None significa que la cola está vacía (quiescencia)."""
        if not self.queue:
            return None
        _, _, event = heapq.heappop(self.queue)
        self.now = event.time
        self.last_seq = event.seq
        self.events += 1
        party = self.parties[event.party]

        if not party.active:
            self._log(event, f"{event.kind.value} party={party.id} ignored=crashed")
            return event

        if event.kind is EventKind.DELIVER:
            self._on_deliver(event, party)
        elif event.kind is EventKind.TIMER:
            self._on_timer(event, party)
        else:
            self._log(event, f"inject party={party.id}")
            if party.engine is not None:
                self._apply(event, party, party.engine.start(party.view, self.now))
        return event

    def _on_deliver(self, event: Event, party: Party) -> None:
        vertex = event.vertex
        inserted = self.channel.deliver(party.id, vertex, party.view)
        self._log(event, f"deliver to={party.id} vertex={vertex.label} id={vertex.short_id} inserted={len(inserted)}")

        for v in inserted:
            if not party.active:
                break
            party.insertion_order.append(v.id)
            self._try_committing(event, party, v)
            if party.engine is not None:
                self._apply(event, party, party.engine.on_vertex_delivered(party.view, v, self.now))

    def _try_committing(self, event: Event, party: Party, v: Vertex) -> None:
        state = party.ordering.state
        seen_obs, seen_skips, seen_anchors = len(state.observations), len(state.skips), len(state.anchors)
        new_ids = party.ordering.try_committing(party.view, v)

        for obs in state.observations[seen_obs:]:
            self.observations.append(ObservationRecord(
                event.time, event.seq, party.id, obs.anchor.round, obs.anchor.id, obs.votes, obs.trigger))
            self._log(event, f"commit party={party.id} anchor={obs.anchor.label} votes={obs.votes} "
                             f"trigger={v.label}")
        for skip in state.skips[seen_skips:]:
            self.skips.append(SkipRecord(event.time, event.seq, party.id, skip.round, skip.anchor))
            self._log(event, f"skip party={party.id} round={skip.round} present={skip.anchor is not None}")
        for ordered in state.anchors[seen_anchors:]:
            self.anchors.append(AnchorRecord(event.time, event.seq, party.id, ordered.anchor.round,
                                             ordered.anchor.id, ordered.trigger_round, ordered.direct))

        start = len(state.committed_log) - len(new_ids)
        for offset, vertex_id in enumerate(new_ids):
            self.commits.append(CommitRecord(event.time, event.seq, party.id, start + offset, vertex_id))
        if new_ids:
            self._log(event, f"order party={party.id} count={len(new_ids)} log={len(state.committed_log)}")

    def _on_timer(self, event: Event, party: Party) -> None:
        if party.engine is None:
            return
        fired = len(party.engine.timeouts)
        commands = party.engine.on_timeout(party.view, event.round, self.now)
        effective = len(party.engine.timeouts) > fired
        self._log(event, f"timer party={party.id} round={event.round} fired={'true' if effective else 'false'}")
        if effective:
            self.timeouts.append(TimeoutRecord(event.time, event.seq, party.id, event.round))
        self._apply(event, party, commands)

    def _apply(self, event: Event, party: Party, commands: List[Command]) -> None:
        for command in commands:
            if isinstance(command, Broadcast):
                self._broadcast(event, party, command.vertex)
            elif isinstance(command, ArmTimer):
                self._push(command.deadline, EventKind.TIMER, party.id, round=command.round)
                self._log(event, f"arm party={party.id} round={command.round} deadline={format_time(command.deadline)}")

    def _broadcast(self, event: Event, party: Party, vertex: Vertex) -> None:
        if party.honest and vertex.round not in self.round_start:
            self.round_start[vertex.round] = self.now
        for outgoing in party.outgoing(vertex):
            deliveries = self.channel.broadcast(party.id, outgoing, self.now, party.send_delay())
            if not deliveries:
                self._log(event, f"equivocation from={party.id} round={outgoing.round} id={outgoing.short_id}")
                continue
            self._log(event, f"broadcast from={party.id} vertex={outgoing.label} id={outgoing.short_id} "
                             f"edges={len(outgoing.edges)}")
            for delivery in deliveries:
                self.schedule_delivery(delivery.vertex, delivery.to, delivery.at)

    def _round_reached(self, target: int) -> bool:
        engines = [p.engine for p in self.honest if p.engine is not None]
        return bool(engines) and all(e.current_round >= target for e in engines)

    def run_until(self, until_round: Optional[int] = None, until_time: Optional[float] = None) -> SimulationReport:
        """
        Avanza hasta alcanzar la ronda/tiempo pedidos o hasta la quiescencia.

        Raises:
            NonTermination: si se supera el límite de eventos del escenario
        """
        deadline = to_ticks(until_time) if until_time is not None else None
        while self.queue:
            if until_round is not None and self._round_reached(until_round):
                break
            if deadline is not None and self.queue[0][0] > deadline:
                break
            if self.events >= self.max_events:
                raise NonTermination(self.events, from_ticks(self.now),
                                     {p.id: p.current_round for p in self.parties})
            self.step()
        return self.report()

    def report(self) -> SimulationReport:
        behaviors = {p.id: str(p.behavior) for p in self.parties if p.behavior is not None}
        return SimulationReport(
            n=self.n,
            f=self.f,
            seed=self.scenario.seed,
            honest=[p.id for p in self.honest],
            behaviors=behaviors,
            logs={p.id: list(p.committed_log) for p in self.parties},
            views={p.id: p.view for p in self.parties},
            rounds={p.id: p.current_round for p in self.parties},
            commits=list(self.commits),
            observations=list(self.observations),
            skips=list(self.skips),
            anchors=list(self.anchors),
            timeouts=list(self.timeouts),
            round_start=dict(self.round_start),
            sent_at=dict(self.channel.sent_at),
            equivocations=list(self.channel.equivocations),
            pending={p: len(b) for p, b in enumerate(self.channel.pending)},
            trace=list(self.trace),
            events=self.events,
            end_time=self.now,
            quiescent=not self.queue,
            scenario_document=self.scenario.to_document(),
            last_seq=self.last_seq,
        )
