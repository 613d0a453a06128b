"""Excepciones del simulador."""
from typing import Iterable, Optional


class BullsharkError(Exception):
    """Raíz de todos los errores del paquete."""


class DagError(BullsharkError):
    """Inserción inválida en una vista del DAG."""


class MissingParents(DagError):
    """La historia causal del vértice todavía no está completa en la vista."""

    def __init__(self, missing: Iterable[str]):
        self.missing = sorted(missing)
        super().__init__(f"faltan {len(self.missing)} padres: {', '.join(m[:8] for m in self.missing)}")


class Equivocation(DagError):
    """Ya existe otro vértice con el mismo (source, round)."""

    def __init__(self, existing: str, offending: str, source: int, round: int):
        self.existing = existing
        self.offending = offending
        super().__init__(f"equivocación de p{source} en ronda {round}: {existing[:8]} != {offending[:8]}")


class TooFewEdges(DagError):
    pass


class InvalidVertex(DagError):
    pass


class OddRound(DagError):
    """Sólo las rondas pares mayores que cero tienen ancla."""


class PrematureTimeout(BullsharkError):
    """Un timer expiró sin n-f vértices en la ronda (error del simulador)."""


class NonTermination(BullsharkError):
    """La simulación superó el límite de eventos."""

    def __init__(self, events: int, time: float, rounds: dict):
        self.events = events
        self.time = time
        self.rounds = rounds
        super().__init__(f"abortado tras {events} eventos en t={time:.3f}; rondas por parte: {rounds}")


class ConfigError(BullsharkError):
    """Escenario inválido. Incluye el campo y, si se conoce, la línea."""

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        self.message = message
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"línea {line}")
        if field:
            where.append(f"campo '{field}'")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)


class UnknownParty(BullsharkError):
    pass
