"""Ejecución de escenarios y barridos de semillas."""
import hashlib
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional

import yaml

from ..consensus import OrderingVariant
from ..errors import NonTermination
from ..network.simulator import SimulationReport, Simulator
from .checks import CheckResult, run_checks
from .scenario import Scenario, random_scenario

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG_ERROR = 2


@dataclass
class RunResult:
    scenario: Scenario
    report: SimulationReport
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.passed else EXIT_CHECK_FAILED

    def to_document(self) -> dict:
        doc = self.report.to_document()
        doc['checks'] = [c.to_document() for c in self.checks]
        return doc


def dump_document(document: dict) -> str:
    return yaml.safe_dump(document, sort_keys=True, allow_unicode=True, default_flow_style=False)


def trace_digest(report: SimulationReport) -> str:
    return hashlib.sha256(report.trace_text().encode()).hexdigest()


def run_scenario(scenario: Scenario, variant: OrderingVariant = OrderingVariant.STANDARD,
                 until_round: Optional[int] = None, until_time: Optional[float] = None) -> RunResult:
    simulator = Simulator(scenario, variant=variant)
    report = simulator.run_until(until_round=until_round, until_time=until_time)
    checks = run_checks(report, scenario)
    for check in checks:
        if not check.passed:
            logger.warning("semilla %d: %s", scenario.seed, check)
    return RunResult(scenario, report, checks)


def _sweep_one(scenario: Scenario) -> dict:
    """Resumen serializable de una corrida (se ejecuta en un proceso del pool)."""
    try:
        result = run_scenario(scenario)
    except NonTermination as e:
        return {'n': scenario.n, 'seed': scenario.seed, 'passed': False,
                'failed': [f"non_termination: {e}"], 'events': e.events, 'trace_sha256': None}
    return {
        'n': scenario.n,
        'seed': scenario.seed,
        'passed': result.passed,
        'failed': [str(c) for c in result.checks if not c.passed],
        'events': result.report.events,
        'trace_sha256': trace_digest(result.report),
    }


def sweep_scenarios(ns: List[int], seeds: range, rounds: int = 30,
                    template: Optional[Scenario] = None) -> List[Scenario]:
    """Un escenario por (n, semilla): la plantilla con otra semilla, o uno adversarial generado."""
    scenarios = []
    for n in ns:
        for seed in seeds:
            if template is not None:
                scenarios.append(template.with_seed(seed))
            else:
                scenarios.append(random_scenario(n, seed, rounds))
    return scenarios


def sweep(scenarios: List[Scenario], workers: int = 0) -> List[dict]:
    """Corre los escenarios en paralelo; el resultado se ordena por (n, semilla)."""
    if workers == 1 or len(scenarios) <= 1:
        results = [_sweep_one(s) for s in scenarios]
    else:
        with ProcessPoolExecutor(max_workers=workers or None) as pool:
            results = list(pool.map(_sweep_one, scenarios, chunksize=8))
    return sorted(results, key=lambda r: (r['n'], r['seed']))
