"""Vértices del DAG, identificadores por contenido y mapeo de líderes."""
import hashlib
import struct
from dataclasses import dataclass, field
from typing import FrozenSet, List, NewType

VertexId = NewType('VertexId', str)
PartyId = int
Round = int

ID_PREFIX = 8


def vertex_digest(round: Round, source: PartyId, block: bytes, edges: FrozenSet[str]) -> VertexId:
    """
    Calcula el identificador de un vértice.
    Serialización canónica: round, source, block (con largo), edges ordenados.
    """
    data = struct.pack('<QI', round, source)
    data += struct.pack('<I', len(block)) + block
    ordered = sorted(edges)
    data += struct.pack('<I', len(ordered))
    for edge in ordered:
        data += bytes.fromhex(edge)
    return VertexId(hashlib.sha256(data).hexdigest())


@dataclass(frozen=True)
class Vertex:
    """Un nodo del DAG: ronda, parte emisora, bloque opaco y aristas a la ronda anterior."""
    round: Round
    source: PartyId
    block: bytes = b''
    edges: FrozenSet[str] = frozenset()
    id: VertexId = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'edges', frozenset(self.edges))
        object.__setattr__(self, 'id', vertex_digest(self.round, self.source, self.block, self.edges))

    @property
    def label(self) -> str:
        return f"r{self.round}/p{self.source}"

    @property
    def short_id(self) -> str:
        return self.id[:ID_PREFIX]

    def sort_key(self):
        return (self.round, self.source)

    def __str__(self):
        return f"{self.label} ({self.short_id})"


def leader(r: Round, n: int) -> PartyId:
    """Líder predefinido de una ronda par: round-robin empezando por la parte 0 en la ronda 2."""
    return (r // 2 - 1) % n


def is_anchor_round(r: Round) -> bool:
    return r > 0 and r % 2 == 0


def genesis_vertices(n: int) -> List[Vertex]:
    """Los n vértices bien conocidos de la ronda 0."""
    return [Vertex(round=0, source=p) for p in range(n)]
