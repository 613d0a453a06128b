"""Modelo de retardos con GST y tiempo simulado de punto fijo."""
import hashlib
import random
from dataclasses import dataclass
from enum import Enum

# Tiempo simulado en milésimas: 3 decimales exactos
TICKS_PER_UNIT = 1000


def to_ticks(units: float) -> int:
    return int(round(units * TICKS_PER_UNIT))


def from_ticks(ticks: int) -> float:
    return round(ticks / TICKS_PER_UNIT, 3)


def format_time(ticks: int) -> str:
    return f"{ticks // TICKS_PER_UNIT}.{ticks % TICKS_PER_UNIT:03d}"


class DelayKind(Enum):
    UNIFORM = "uniform"
    FIXED = "fixed"
    HEAVY_TAIL = "heavy_tail"


def delivery_rng(seed: int, source: int, round: int, receiver: int) -> random.Random:
    """Un generador independiente por (source, round, receiver)."""
    material = f"{seed}/{source}/{round}/{receiver}".encode()
    return random.Random(int.from_bytes(hashlib.sha256(material).digest()[:8], 'big'))


@dataclass(frozen=True)
class DelayModel:
    """
    Retardos antes de GST según `kind` en [low, high]; después de GST, a lo sumo `post_gst_bound`.
    Todo mensaje enviado en t llega a más tardar en max(t, gst) + post_gst_bound.
    """
    kind: DelayKind
    low: int
    high: int
    post_gst_bound: int
    gst: int

    def arrival(self, rng: random.Random, sent_at: int) -> int:
        if sent_at >= self.gst:
            if self.kind is DelayKind.FIXED:
                return sent_at + self.post_gst_bound
            return sent_at + rng.randint(0, self.post_gst_bound)

        if self.kind is DelayKind.FIXED:
            delay = self.low
        elif self.kind is DelayKind.UNIFORM:
            delay = rng.randint(self.low, self.high)
        else:
            delay = int(self.low * rng.paretovariate(1.5))
        return min(sent_at + delay, self.gst + self.post_gst_bound)
