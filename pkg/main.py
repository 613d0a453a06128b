"""
Bullshark DAG Simulator - Ordenamiento de DAG parcialmente síncrono.

Subcomandos:
1. run     - Corre un escenario y verifica safety / skip soundness / liveness
2. sweep   - Barrido de semillas (en paralelo)
3. fixture - Reproduce las figuras fig2..fig5
4. export  - Exporta la vista final de una parte (dot / jsonl)

Códigos de salida: 0 todo OK, 1 falla de verificación, 2 error de configuración.
"""
import argparse
import logging
import os
import sys

# Agregar src al path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.config import LOG_LEVEL, SWEEP_WORKERS
from src.errors import ConfigError, NonTermination, UnknownParty
from src.harness.checks import run_checks
from src.harness.fixtures import FIGURES, replay_fixture
from src.harness.runner import (EXIT_CHECK_FAILED, EXIT_CONFIG_ERROR, EXIT_OK, dump_document, run_scenario,
                                sweep, sweep_scenarios)
from src.harness.scenario import load_scenario
from src.utils.file_utils import export_dot, export_jsonl, write_output
from src.utils.parser import parse_int_list, parse_seed_range

logger = logging.getLogger('bullshark')


def _load(args):
    scenario = load_scenario(args.scenario)
    if args.seed is not None:
        scenario = scenario.with_seed(args.seed)
    return scenario


def cmd_run(args) -> int:
    scenario = _load(args)
    result = run_scenario(scenario, until_round=args.until_round)
    if args.trace:
        write_output(result.report.trace_text(), args.trace)
    write_output(dump_document(result.to_document()), args.out)
    for check in result.checks:
        print(check, file=sys.stderr)
    return result.exit_code


def cmd_sweep(args) -> int:
    template = load_scenario(args.scenario) if args.scenario else None
    seeds = parse_seed_range(args.seeds)
    ns = [template.n] if template is not None else parse_int_list(args.n)
    scenarios = sweep_scenarios(ns, seeds, rounds=args.rounds, template=template)
    logger.info("barrido de %d escenarios", len(scenarios))

    results = sweep(scenarios, workers=args.jobs)
    failures = [r for r in results if not r['passed']]
    document = {
        'total': len(results),
        'passed': len(results) - len(failures),
        'failed': len(failures),
        'runs': results,
    }
    write_output(dump_document(document), args.out)
    print(f"{len(results) - len(failures)}/{len(results)} escenarios sin violaciones", file=sys.stderr)
    return EXIT_OK if not failures else EXIT_CHECK_FAILED


def cmd_fixture(args) -> int:
    names = sorted(FIGURES) if args.name == 'all' else [args.name]
    documents = []
    exit_code = EXIT_OK
    for name in names:
        result = replay_fixture(name)
        checks = run_checks(result.report, result.scenario)
        for line in result.summary():
            print(line, file=sys.stderr)
        for check in checks:
            print(f"  {check}", file=sys.stderr)
            if not check.passed:
                exit_code = EXIT_CHECK_FAILED
        doc = result.report.to_document()
        doc['fixture'] = result.to_document()
        doc['checks'] = [c.to_document() for c in checks]
        documents.append(doc)
    write_output(dump_document(documents[0] if len(documents) == 1 else {'fixtures': documents}), args.out)
    return exit_code


def cmd_export(args) -> int:
    if args.fixture:
        result = replay_fixture(args.fixture)
        report = result.report
    else:
        report = run_scenario(_load(args)).report
    if not 0 <= args.party < report.n:
        raise UnknownParty(f"la parte {args.party} no existe (n={report.n})")

    view = report.views[args.party]
    if args.format == 'dot':
        committed = [o.anchor_id for o in report.observations if o.party == args.party]
        skipped = [s.anchor_id for s in report.skips if s.party == args.party and s.anchor_id is not None]
        ordered = [a.anchor_id for a in report.anchors if a.party == args.party and not a.direct]
        content = export_dot(view, committed=committed, skipped=skipped, ordered=ordered)
    else:
        content = export_jsonl(view)
    write_output(content, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='bullshark', description="Simulador del ordenamiento Bullshark sobre un DAG")
    parser.add_argument('-v', '--verbose', action='store_true', help="logging en nivel DEBUG")
    sub = parser.add_subparsers(dest='cmd', required=True)

    run = sub.add_parser('run', help="corre un escenario")
    run.add_argument('--scenario', required=True)
    run.add_argument('--seed', type=int)
    run.add_argument('--out')
    run.add_argument('--trace', help="archivo donde escribir la traza de eventos")
    run.add_argument('--until-round', type=int)
    run.set_defaults(func=cmd_run)

    sw = sub.add_parser('sweep', help="barrido de semillas")
    sw.add_argument('--seeds', required=True, help="rango A..B (inclusive) o una semilla")
    sw.add_argument('--scenario', help="plantilla; si se omite se generan escenarios adversariales")
    sw.add_argument('--n', default='4,7,10', help="tamaños de comité, separados por comas")
    sw.add_argument('--rounds', type=int, default=30)
    sw.add_argument('--jobs', type=int, default=SWEEP_WORKERS, help="procesos (0 = uno por CPU)")
    sw.add_argument('--out')
    sw.set_defaults(func=cmd_sweep)

    fx = sub.add_parser('fixture', help="reproduce una figura")
    fx.add_argument('name', choices=sorted(FIGURES) + ['all'])
    fx.add_argument('--out')
    fx.set_defaults(func=cmd_fixture)

    ex = sub.add_parser('export', help="exporta la vista final de una parte")
    source = ex.add_mutually_exclusive_group(required=True)
    source.add_argument('--scenario')
    source.add_argument('--fixture', choices=sorted(FIGURES))
    ex.add_argument('--seed', type=int)
    ex.add_argument('--format', choices=['dot', 'jsonl'], default='dot')
    ex.add_argument('--party', type=int, required=True)
    ex.add_argument('--out')
    ex.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else LOG_LEVEL,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
    )
    try:
        return args.func(args)
    except (ConfigError, UnknownParty, ValueError) as e:
        print(f"Error de configuración: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except NonTermination as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
