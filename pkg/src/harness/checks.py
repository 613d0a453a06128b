"""
Verificadores de propiedades sobre los reportes de simulación.

Cada verificador devuelve un CheckResult; ante una falla, el detalle incluye
el evento (time, seq) más temprano que la evidencia.
"""
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..dag import is_anchor_round, leader
from ..network.delay import from_ticks, to_ticks
from ..network.simulator import AnchorRecord, CommitRecord, SimulationReport
from .scenario import Scenario


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    event: Optional[Tuple[float, int]] = None

    def to_document(self) -> dict:
        doc = {'name': self.name, 'passed': self.passed, 'detail': self.detail}
        if self.event is not None:
            doc['event'] = {'time': self.event[0], 'seq': self.event[1]}
        return doc

    def __str__(self):
        mark = "OK" if self.passed else "FALLA"
        return f"[{mark}] {self.name}: {self.detail}"


def _event(time: int, seq: int) -> Tuple[float, int]:
    return (from_ticks(time), seq)


def first_divergence(a: Sequence[str], b: Sequence[str]) -> Optional[int]:
    """Primer índice donde los logs difieren, o None si uno es prefijo del otro."""
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    return None


def check_log_prefixes(logs: Dict[int, Sequence[str]]) -> CheckResult:
    """Acuerdo de prefijos sobre logs finales (sin información de eventos)."""
    parties = sorted(logs)
    for i, p in enumerate(parties):
        for q in parties[i + 1:]:
            index = first_divergence(logs[p], logs[q])
            if index is not None:
                return CheckResult('safety', False, f"p{p} y p{q} divergen en el índice {index}")
    return CheckResult('safety', True, f"{len(parties)} logs relacionados por prefijo")


def check_prefix_agreement(commits: Iterable[CommitRecord], honest: Iterable[int]) -> CheckResult:
    """
    Verifica incrementalmente, evento por evento, que todos los logs honestos
    sean prefijos de una misma secuencia.
    """
    honest = set(honest)
    reference: List[str] = []
    owner: List[int] = []
    for record in commits:
        if record.party not in honest:
            continue
        i = record.position
        if i < len(reference):
            if reference[i] != record.vertex_id:
                return CheckResult(
                    'safety', False,
                    f"p{record.party} ordenó {record.vertex_id[:8]} en la posición {i}, "
                    f"pero p{owner[i]} ya había ordenado {reference[i][:8]}",
                    _event(record.time, record.seq),
                )
        else:
            reference.append(record.vertex_id)
            owner.append(record.party)
    return CheckResult('safety', True, f"{len(honest)} partes honestas; prefijo común de {len(reference)} vértices")


def check_safety(report: SimulationReport) -> CheckResult:
    return check_prefix_agreement(report.commits, report.honest)


def check_skip_soundness(report: SimulationReport) -> CheckResult:
    """Ninguna ancla salteada por una parte honesta fue comprometida directamente por otra honesta."""
    honest = set(report.honest)
    committed = {}
    for obs in report.observations:
        if obs.party in honest:
            committed.setdefault(obs.anchor_round, obs)

    worst = None
    for skip in report.skips:
        if skip.party not in honest or skip.round not in committed:
            continue
        obs = committed[skip.round]
        when = max((skip.time, skip.seq), (obs.time, obs.seq))
        if worst is None or when < worst[0]:
            worst = (when, skip, obs)

    if worst is not None:
        when, skip, obs = worst
        return CheckResult(
            'skip_soundness', False,
            f"p{skip.party} salteó el ancla de la ronda {skip.round}, "
            f"pero p{obs.party} la comprometió con {obs.votes} votos",
            _event(*when),
        )
    skipped = len([s for s in report.skips if s.party in honest])
    return CheckResult('skip_soundness', True, f"{skipped} saltos, ninguno sobre un ancla comprometida")


def _passed_over(report: SimulationReport, party: int, r: int) -> Tuple[float, int]:
    """Primer evento en que `party` dejó atrás la ronda r sin ordenar su ancla; si no hay, el último evento."""
    evidence = [(s.time, s.seq) for s in report.skips if s.party == party and s.round == r]
    evidence += [(a.time, a.seq) for a in report.anchors if a.party == party and a.round > r]
    if evidence:
        return _event(*min(evidence))
    return _event(report.end_time, report.last_seq)


def check_liveness(report: SimulationReport, scenario: Scenario) -> CheckResult:
    """
    Después de GST, toda ancla de líder honesto se compromete en todas las partes
    honestas a lo sumo 2 rondas después, y ningún timer de ronda par expira.
    """
    gst = to_ticks(scenario.gst)
    honest = sorted(report.honest)
    honest_set = set(honest)
    reached = min(report.rounds[p] for p in honest)

    post_gst = sorted(r for r, start in report.round_start.items() if start >= gst)
    if not post_gst or reached - post_gst[0] < 4:
        return CheckResult('liveness', True, "no aplicable: menos de 4 rondas después de GST")

    first: Dict[Tuple[int, int], AnchorRecord] = {}
    for record in report.anchors:
        first.setdefault((record.party, record.round), record)

    checked = 0
    for r in range(post_gst[0], reached - 1):
        if not is_anchor_round(r) or report.round_start.get(r, -1) < gst:
            continue
        if leader(r, report.n) not in honest_set:
            continue
        checked += 1
        for p in honest:
            record = first.get((p, r))
            if record is None:
                return CheckResult('liveness', False, f"p{p} nunca ordenó el ancla de la ronda {r}",
                                   _passed_over(report, p, r))
            if not record.direct or record.trigger_round - r > 2:
                return CheckResult(
                    'liveness', False,
                    f"p{p} ordenó el ancla de la ronda {r} recién en la ronda {record.trigger_round}",
                    _event(record.time, record.seq),
                )

    late_timers = [
        t for t in report.timeouts
        if t.party in honest_set and is_anchor_round(t.round)
        and leader(t.round, report.n) in honest_set and t.time >= gst
    ]
    if late_timers:
        t = late_timers[0]
        return CheckResult(
            'liveness', False,
            f"{len(late_timers)} timers de ronda par expiraron después de GST con líder honesto "
            f"(primero: p{t.party}, ronda {t.round})",
            _event(t.time, t.seq),
        )
    return CheckResult('liveness', True, f"{checked} anclas comprometidas con latencia de 2 rondas; 0 timeouts")


def run_checks(report: SimulationReport, scenario: Scenario) -> List[CheckResult]:
    results = []
    if scenario.checks.safety:
        results.append(check_safety(report))
    if scenario.checks.skip_soundness:
        results.append(check_skip_soundness(report))
    if scenario.checks.liveness:
        results.append(check_liveness(report, scenario))
    return results
