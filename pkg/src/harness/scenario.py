"""Escenarios de simulación: carga desde YAML, validación y generación aleatoria."""
import random
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import yaml

from ..byzantine import ByzantineMode, ByzantineSpec
from ..config import DEFAULT_POST_GST_BOUND, DEFAULT_TIMEOUT, MAX_EVENTS
from ..errors import ConfigError
from ..network.delay import DelayKind, DelayModel, to_ticks

SCENARIO_KEYS = {'n', 'f', 'rounds', 'delay', 'gst', 'timeout', 'byzantine', 'seed', 'checks', 'max_events'}
DELAY_KEYS = {'kind', 'low', 'high', 'post_gst_bound'}
BYZANTINE_KEYS = {'party', 'mode', 'after_round', 'amount'}
CHECK_KEYS = {'safety', 'skip_soundness', 'liveness'}

MAX_SEED = 2 ** 64 - 1


@dataclass(frozen=True)
class DelaySpec:
    kind: DelayKind = DelayKind.UNIFORM
    low: float = 0.5
    high: float = 5.0
    post_gst_bound: float = DEFAULT_POST_GST_BOUND


@dataclass(frozen=True)
class CheckFlags:
    safety: bool = True
    skip_soundness: bool = True
    liveness: bool = False


@dataclass(frozen=True)
class Scenario:
    n: int
    f: int
    rounds: int
    delay: DelaySpec = field(default_factory=DelaySpec)
    gst: float = 0.0
    timeout: float = DEFAULT_TIMEOUT
    byzantine: Tuple[ByzantineSpec, ...] = ()
    seed: int = 0
    checks: CheckFlags = field(default_factory=CheckFlags)
    max_events: int = MAX_EVENTS

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.f < 0:
            raise ConfigError("f debe ser no negativo", field='f')
        if self.n < 3 * self.f + 1:
            raise ConfigError(f"n={self.n} viola n >= 3f+1 con f={self.f}", field='n')
        if self.rounds < 2:
            raise ConfigError("se requieren al menos 2 rondas", field='rounds')
        if not 0 <= self.seed <= MAX_SEED:
            raise ConfigError("la semilla debe ser un entero de 64 bits", field='seed')
        if self.timeout <= 0:
            raise ConfigError("el timeout debe ser positivo", field='timeout')
        if self.gst < 0:
            raise ConfigError("gst no puede ser negativo", field='gst')
        if self.max_events <= 0:
            raise ConfigError("max_events debe ser positivo", field='max_events')

        d = self.delay
        if d.low < 0 or d.high < d.low:
            raise ConfigError(f"rango de retardo inválido [{d.low}, {d.high}]", field='delay')
        if d.post_gst_bound < 0:
            raise ConfigError("post_gst_bound no puede ser negativo", field='delay.post_gst_bound')

        if len(self.byzantine) > self.f:
            raise ConfigError(f"{len(self.byzantine)} partes bizantinas con f={self.f}", field='byzantine')
        seen = set()
        for i, spec in enumerate(self.byzantine):
            where = f'byzantine[{i}]'
            if not 0 <= spec.party < self.n:
                raise ConfigError(f"parte {spec.party} fuera de [0, {self.n})", field=f'{where}.party')
            if spec.party in seen:
                raise ConfigError(f"parte {spec.party} repetida", field=f'{where}.party')
            seen.add(spec.party)
            if spec.mode is ByzantineMode.CRASH and spec.after_round is None:
                raise ConfigError("crash requiere after_round", field=f'{where}.after_round')
            if spec.mode is ByzantineMode.DELAY_OWN_BROADCAST and (spec.amount is None or spec.amount < 0):
                raise ConfigError("delay_own_broadcast requiere amount >= 0", field=f'{where}.amount')

    @property
    def byzantine_parties(self) -> Tuple[int, ...]:
        return tuple(sorted(spec.party for spec in self.byzantine))

    def with_seed(self, seed: int) -> 'Scenario':
        return replace(self, seed=seed)

    def delay_model(self) -> DelayModel:
        return DelayModel(
            kind=self.delay.kind,
            low=to_ticks(self.delay.low),
            high=to_ticks(self.delay.high),
            post_gst_bound=to_ticks(self.delay.post_gst_bound),
            gst=to_ticks(self.gst),
        )

    def to_document(self) -> Dict[str, Any]:
        byzantine = []
        for spec in self.byzantine:
            entry: Dict[str, Any] = {'party': spec.party, 'mode': spec.mode.value}
            if spec.after_round is not None:
                entry['after_round'] = spec.after_round
            if spec.amount is not None:
                entry['amount'] = spec.amount
            byzantine.append(entry)
        return {
            'n': self.n,
            'f': self.f,
            'rounds': self.rounds,
            'delay': {
                'kind': self.delay.kind.value,
                'low': self.delay.low,
                'high': self.delay.high,
                'post_gst_bound': self.delay.post_gst_bound,
            },
            'gst': self.gst,
            'timeout': self.timeout,
            'byzantine': byzantine,
            'seed': self.seed,
            'checks': {
                'safety': self.checks.safety,
                'skip_soundness': self.checks.skip_soundness,
                'liveness': self.checks.liveness,
            },
            'max_events': self.max_events,
        }


def _key_lines(node, prefix: str = '', lines: Optional[Dict[str, int]] = None) -> Dict[str, int]:
    """Mapea cada ruta de campo ('delay.kind', 'byzantine[0].mode') a su línea (1-based)."""
    if lines is None:
        lines = {}
    if isinstance(node, yaml.MappingNode):
        for key_node, value_node in node.value:
            path = f"{prefix}.{key_node.value}" if prefix else str(key_node.value)
            lines[path] = key_node.start_mark.line + 1
            _key_lines(value_node, path, lines)
    elif isinstance(node, yaml.SequenceNode):
        for i, item in enumerate(node.value):
            path = f"{prefix}[{i}]"
            lines[path] = item.start_mark.line + 1
            _key_lines(item, path, lines)
    return lines


class _Reader:
    """Lee campos tipados de un documento, con diagnóstico de campo y línea."""

    def __init__(self, lines: Dict[str, int]):
        self.lines = lines

    def error(self, message: str, path: str) -> ConfigError:
        return ConfigError(message, field=path, line=self.lines.get(path))

    def mapping(self, value: Any, path: str, allowed: set) -> Dict[str, Any]:
        if not isinstance(value, dict):
            raise self.error("se esperaba un mapeo", path)
        for key in value:
            if key not in allowed:
                child = f"{path}.{key}" if path else str(key)
                raise self.error(f"clave desconocida '{key}'", child)
        return value

    def integer(self, value: Any, path: str) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise self.error(f"se esperaba un entero, se obtuvo {value!r}", path)
        return value

    def number(self, value: Any, path: str) -> float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise self.error(f"se esperaba un número, se obtuvo {value!r}", path)
        return float(value)

    def boolean(self, value: Any, path: str) -> bool:
        if not isinstance(value, bool):
            raise self.error(f"se esperaba true/false, se obtuvo {value!r}", path)
        return value

    def enum(self, enum_cls, value: Any, path: str):
        try:
            return enum_cls(value)
        except ValueError:
            options = ', '.join(e.value for e in enum_cls)
            raise self.error(f"valor '{value}' inválido (opciones: {options})", path) from None


def parse_scenario(text: str) -> Scenario:
    """Construye un Scenario desde texto YAML. Las claves desconocidas son error."""
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, 'problem_mark', None)
        raise ConfigError(f"YAML inválido: {getattr(e, 'problem', e)}",
                          line=mark.line + 1 if mark is not None else None) from None

    reader = _Reader(_key_lines(node))
    data = reader.mapping(data if data is not None else {}, '', SCENARIO_KEYS)
    for required in ('n', 'f', 'rounds'):
        if required not in data:
            raise ConfigError("campo obligatorio ausente", field=required)

    kwargs: Dict[str, Any] = {
        'n': reader.integer(data['n'], 'n'),
        'f': reader.integer(data['f'], 'f'),
        'rounds': reader.integer(data['rounds'], 'rounds'),
    }
    if 'seed' in data:
        kwargs['seed'] = reader.integer(data['seed'], 'seed')
    if 'gst' in data:
        kwargs['gst'] = reader.number(data['gst'], 'gst')
    if 'timeout' in data:
        kwargs['timeout'] = reader.number(data['timeout'], 'timeout')
    if 'max_events' in data:
        kwargs['max_events'] = reader.integer(data['max_events'], 'max_events')

    if 'delay' in data:
        raw = reader.mapping(data['delay'], 'delay', DELAY_KEYS)
        defaults = DelaySpec()
        kwargs['delay'] = DelaySpec(
            kind=reader.enum(DelayKind, raw.get('kind', defaults.kind.value), 'delay.kind'),
            low=reader.number(raw.get('low', defaults.low), 'delay.low'),
            high=reader.number(raw.get('high', defaults.high), 'delay.high'),
            post_gst_bound=reader.number(raw.get('post_gst_bound', defaults.post_gst_bound),
                                         'delay.post_gst_bound'),
        )

    if 'checks' in data:
        raw = reader.mapping(data['checks'], 'checks', CHECK_KEYS)
        defaults = CheckFlags()
        kwargs['checks'] = CheckFlags(**{
            key: reader.boolean(raw.get(key, getattr(defaults, key)), f'checks.{key}') for key in CHECK_KEYS
        })

    if 'byzantine' in data:
        entries = data['byzantine'] or []
        if not isinstance(entries, list):
            raise reader.error("se esperaba una lista", 'byzantine')
        specs = []
        for i, entry in enumerate(entries):
            path = f'byzantine[{i}]'
            raw = reader.mapping(entry, path, BYZANTINE_KEYS)
            if 'party' not in raw or 'mode' not in raw:
                raise reader.error("cada entrada requiere party y mode", path)
            specs.append(ByzantineSpec(
                party=reader.integer(raw['party'], f'{path}.party'),
                mode=reader.enum(ByzantineMode, raw['mode'], f'{path}.mode'),
                after_round=reader.integer(raw['after_round'], f'{path}.after_round') if 'after_round' in raw else None,
                amount=reader.number(raw['amount'], f'{path}.amount') if 'amount' in raw else None,
            ))
        kwargs['byzantine'] = tuple(specs)

    try:
        return Scenario(**kwargs)
    except ConfigError as e:
        if e.line is None and e.field in reader.lines:
            raise ConfigError(e.message, field=e.field, line=reader.lines[e.field]) from None
        raise


def load_scenario(path: str) -> Scenario:
    file_path = Path(path)
    if not file_path.is_file():
        raise ConfigError(f"no existe el archivo de escenario: {path}")
    return parse_scenario(file_path.read_text(encoding='utf-8'))


def random_scenario(n: int, seed: int, rounds: int = 30) -> Scenario:
    """Escenario adversarial derivado de la semilla: f partes bizantinas con modos al azar."""
    f = (n - 1) // 3
    rng = random.Random(seed)
    modes = list(ByzantineMode)
    specs = []
    for party in sorted(rng.sample(range(n), f)):
        mode = rng.choice(modes)
        after_round = rng.randint(1, rounds) if mode is ByzantineMode.CRASH else None
        amount = round(rng.uniform(0.5, 15.0), 3) if mode is ByzantineMode.DELAY_OWN_BROADCAST else None
        specs.append(ByzantineSpec(party=party, mode=mode, after_round=after_round, amount=amount))
    kind = rng.choice([DelayKind.UNIFORM, DelayKind.HEAVY_TAIL])
    return Scenario(
        n=n,
        f=f,
        rounds=rounds,
        delay=DelaySpec(kind=kind, low=0.2, high=8.0, post_gst_bound=DEFAULT_POST_GST_BOUND),
        gst=round(rng.uniform(0.0, 40.0), 3),
        timeout=DEFAULT_TIMEOUT,
        byzantine=tuple(specs),
        seed=seed,
        checks=CheckFlags(safety=True, skip_soundness=True, liveness=False),
    )
