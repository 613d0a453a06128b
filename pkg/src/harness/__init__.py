from .scenario import Scenario, DelaySpec, CheckFlags, parse_scenario, load_scenario, random_scenario
from .checks import (CheckResult, check_safety, check_skip_soundness, check_liveness,
                     check_prefix_agreement, check_log_prefixes, first_divergence, run_checks)
from .fixtures import FIGURES, Figure, FixtureResult, replay_fixture, replay_figure, anchor_name
from .runner import RunResult, run_scenario, sweep, sweep_scenarios, dump_document, trace_digest

__all__ = ['Scenario', 'DelaySpec', 'CheckFlags', 'parse_scenario', 'load_scenario', 'random_scenario',
           'CheckResult', 'check_safety', 'check_skip_soundness', 'check_liveness', 'check_prefix_agreement',
           'check_log_prefixes', 'first_divergence', 'run_checks', 'FIGURES', 'Figure', 'FixtureResult',
           'replay_fixture', 'replay_figure', 'anchor_name', 'RunResult', 'run_scenario', 'sweep', 'sweep_scenarios',
           'dump_document', 'trace_digest']
