"""
Figuras reproducibles (n=4, f=1).

Cada figura es un DAG escrito a mano más un cronograma de entregas por parte.
Las anclas son A1 = ronda 2 (p0), A2 = ronda 4 (p1), A3 = ronda 6 (p2).
"""
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from ..consensus import OrderingVariant
from ..dag import Vertex, genesis_vertices, leader
from ..errors import ConfigError
from ..network.delay import to_ticks
from ..network.simulator import SimulationReport, Simulator
from .scenario import CheckFlags, Scenario

Key = Tuple[int, int]
ALL = (0, 1, 2, 3)


@dataclass(frozen=True)
class Figure:
    name: str
    description: str
    # (round, source) -> sources referenciados en round-1
    parents: Dict[Key, Tuple[int, ...]]
    # entregas diferidas al final, por parte
    late: Dict[int, Tuple[Key, ...]] = field(default_factory=dict)
    n: int = 4
    f: int = 1

    @property
    def rounds(self) -> int:
        return max(r for r, _ in self.parents)


def _rounds(*layers: Dict[int, Tuple[int, ...]]) -> Dict[Key, Tuple[int, ...]]:
    parents = {}
    for r, layer in enumerate(layers, start=1):
        for source, refs in layer.items():
            parents[(r, source)] = refs
    return parents


FULL = {p: ALL for p in ALL}

FIGURES: Dict[str, Figure] = {
    'fig2': Figure(
        name='fig2',
        description="anclas e historia causal de A2",
        parents=_rounds(
            FULL,
            {0: (0, 1, 2), 1: (0, 1, 2), 2: (0, 1, 2), 3: (1, 2, 3)},
            {0: (0, 1, 2), 1: (0, 1, 2), 2: (0, 1, 2), 3: (1, 2, 3)},
            {p: (0, 1, 2) for p in ALL},
        ),
    ),
    'fig3': Figure(
        name='fig3',
        description="regla de compromiso: A2 con 3 votos, A1 con 1 voto",
        parents=_rounds(
            FULL,
            FULL,
            {0: ALL, 1: (1, 2, 3), 2: (1, 2, 3), 3: (1, 2, 3)},
            {p: (0, 1, 2) for p in ALL},
            {0: (0, 1, 2), 1: (0, 1, 2), 2: (0, 1, 2), 3: (0, 2, 3)},
            {0: (0, 1, 2)},
        ),
    ),
    'fig4': Figure(
        name='fig4',
        description="vistas distintas: p1 ve 2 = f+1 votos para A1, p0 no",
        parents=_rounds(
            FULL,
            {0: (0, 1, 2), 1: ALL, 2: ALL, 3: ALL},
            {0: ALL, 1: (0, 1, 2), 2: (1, 2, 3), 3: (1, 2, 3)},
            {0: (1, 2, 3), 1: (1, 2, 3), 2: (1, 2, 3), 3: (0, 1, 2)},
            {p: (0, 1, 2) for p in ALL},
            {0: (0, 1, 2), 1: (0, 1, 2)},
        ),
        late={0: ((4, 3),)},
    ),
    'fig5': Figure(
        name='fig5',
        description="ordenamiento de anclas: A2 salteada, A1 antes que A3",
        parents=_rounds(
            FULL,
            {0: (0, 1, 2), 1: ALL, 2: ALL, 3: ALL},
            {0: (0, 1, 2), 1: (1, 2, 3), 2: (1, 2, 3), 3: (1, 2, 3)},
            {0: (0, 1, 2), 1: (1, 2, 3), 2: (0, 2, 3), 3: (0, 2, 3)},
            {p: (0, 2, 3) for p in ALL},
            {p: (0, 1, 2) for p in ALL},
            {p: (0, 2, 3) for p in ALL},
            {0: (0, 1, 2)},
        ),
        late={0: ((4, 1),)},
    ),
}


def anchor_name(r: int) -> str:
    return f"A{r // 2}"


def get_figure(name: str) -> Figure:
    try:
        return FIGURES[name]
    except KeyError:
        raise ConfigError(f"figura desconocida '{name}' (opciones: {', '.join(sorted(FIGURES))})",
                          field='fixture') from None


def build_vertices(figure: Figure) -> Dict[Key, Vertex]:
    """Materializa los vértices de la figura en orden de ronda."""
    vertices: Dict[Key, Vertex] = {(0, g.source): g for g in genesis_vertices(figure.n)}
    for key in sorted(figure.parents):
        r, source = key
        edges = frozenset(vertices[(r - 1, p)].id for p in figure.parents[key])
        vertices[key] = Vertex(round=r, source=source, block=f"r{r}/p{source}".encode(), edges=edges)
    return vertices


def delivery_order(figure: Figure, party: int) -> List[Key]:
    late = figure.late.get(party, ())
    order = [key for key in sorted(figure.parents) if key not in late]
    return order + list(late)


def fixture_scenario(figure: Figure) -> Scenario:
    return Scenario(n=figure.n, f=figure.f, rounds=figure.rounds,
                    checks=CheckFlags(safety=True, skip_soundness=True, liveness=False))


@dataclass
class FixtureResult:
    figure: Figure
    scenario: Scenario
    report: SimulationReport
    vertices: Dict[Key, Vertex]

    def anchor(self, name: str) -> Vertex:
        r = int(name[1:]) * 2
        return self.vertices[(r, leader(r, self.figure.n))]

    def direct_commits(self, party: int) -> Dict[str, int]:
        """Anclas comprometidas directamente por la parte -> votos."""
        return {anchor_name(o.anchor_round): o.votes for o in self.report.observations if o.party == party}

    def ordered_anchors(self, party: int) -> List[str]:
        return [anchor_name(a.round) for a in self.report.anchors if a.party == party]

    def skipped(self, party: int) -> List[str]:
        return [anchor_name(s.round) for s in self.report.skips if s.party == party]

    def to_document(self) -> dict:
        parties = {}
        for p in range(self.figure.n):
            parties[p] = {
                'direct_commits': self.direct_commits(p),
                'ordered_anchors': self.ordered_anchors(p),
                'skipped': self.skipped(p),
            }
        return {'name': self.figure.name, 'description': self.figure.description, 'parties': parties}

    def summary(self) -> List[str]:
        lines = [f"{self.figure.name}: {self.figure.description}"]
        for p in range(self.figure.n):
            commits = ', '.join(f"{a} con {v} votos" for a, v in self.direct_commits(p).items()) or "ninguno"
            lines.append(f"  p{p}: compromisos directos: {commits}; "
                         f"orden de anclas: {' '.join(self.ordered_anchors(p)) or '-'}; "
                         f"salteadas: {' '.join(self.skipped(p)) or '-'}")
        return lines


def replay_fixture(name: str, variant: OrderingVariant = OrderingVariant.STANDARD) -> FixtureResult:
    return replay_figure(get_figure(name), variant)


def replay_figure(figure: Figure, variant: OrderingVariant = OrderingVariant.STANDARD) -> FixtureResult:
    """Reproduce una figura con partes pasivas y el cronograma de entregas explícito."""
    scenario = fixture_scenario(figure)
    simulator = Simulator(scenario, variant=variant, scripted=True)
    vertices = build_vertices(figure)
    for party in range(figure.n):
        for i, key in enumerate(delivery_order(figure, party)):
            simulator.schedule_delivery(vertices[key], party, to_ticks(i + 1))
    report = simulator.run_until()
    return FixtureResult(figure, scenario, report, vertices)
