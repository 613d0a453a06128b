"""Vista local del DAG de una parte."""
import logging
from collections import deque
from typing import Dict, FrozenSet, Iterator, List, Optional, Set, Tuple

from ..errors import Equivocation, InvalidVertex, MissingParents, OddRound, TooFewEdges
from .vertex import Round, Vertex, genesis_vertices, is_anchor_round, leader

logger = logging.getLogger(__name__)


class DagView:
    """
    DAG local de una parte: un arreglo de rondas, cada una con a lo sumo un vértice por parte.

    La inserción exige Validity (todos los padres presentes), n-f aristas y no-equivocación.
    No hace buffering: los vértices fuera de orden se rechazan con MissingParents.
    """

    def __init__(self, n: int, f: int):
        self.n = n
        self.f = f
        self.rounds: List[Dict[int, Vertex]] = []
        self.by_id: Dict[str, Vertex] = {}
        # (vértice, ronda destino) -> ids alcanzables en esa ronda
        self._reach: Dict[Tuple[str, int], FrozenSet[str]] = {}

    @classmethod
    def bootstrap(cls, n: int, f: int) -> 'DagView':
        """Vista con los n vértices génesis ya insertados."""
        view = cls(n, f)
        for vertex in genesis_vertices(n):
            view.insert(vertex)
        return view

    @property
    def quorum(self) -> int:
        return self.n - self.f

    @property
    def max_round(self) -> int:
        return len(self.rounds) - 1

    def __contains__(self, item) -> bool:
        key = item.id if isinstance(item, Vertex) else item
        return key in self.by_id

    def __len__(self) -> int:
        return len(self.by_id)

    def get(self, vertex_id: str) -> Optional[Vertex]:
        return self.by_id.get(vertex_id)

    def vertex_at(self, r: Round, source: int) -> Optional[Vertex]:
        if r < 0 or r >= len(self.rounds):
            return None
        return self.rounds[r].get(source)

    def round_vertices(self, r: Round) -> Dict[int, Vertex]:
        if r < 0 or r >= len(self.rounds):
            return {}
        return self.rounds[r]

    def vertices(self) -> Iterator[Vertex]:
        """Todos los vértices en orden (round, source)."""
        for per_round in self.rounds:
            for source in sorted(per_round):
                yield per_round[source]

    def ids(self) -> FrozenSet[str]:
        return frozenset(self.by_id)

    def insert(self, v: Vertex) -> bool:
        """
        Inserta un vértice en la vista.

        Returns:
            True si se agregó, False si ya estaba (idéntico).

        Raises:
            InvalidVertex, Equivocation, TooFewEdges, MissingParents
        """
        if not 0 <= v.source < self.n:
            raise InvalidVertex(f"source {v.source} fuera de [0, {self.n})")
        if v.round < 0:
            raise InvalidVertex(f"ronda negativa: {v.round}")

        existing = self.vertex_at(v.round, v.source)
        if existing is not None:
            if existing.id == v.id:
                return False
            raise Equivocation(existing.id, v.id, v.source, v.round)

        if v.round == 0:
            if v.edges:
                raise InvalidVertex("un vértice génesis no puede tener aristas")
        else:
            if len(v.edges) < self.quorum:
                raise TooFewEdges(f"{v.label} tiene {len(v.edges)} aristas, se requieren {self.quorum}")
            missing = [e for e in v.edges if e not in self.by_id]
            if missing:
                raise MissingParents(missing)
            for edge in v.edges:
                parent = self.by_id[edge]
                if parent.round != v.round - 1:
                    raise InvalidVertex(f"{v.label} apunta a {parent.label}, fuera de la ronda {v.round - 1}")

        while len(self.rounds) <= v.round:
            self.rounds.append({})
        self.rounds[v.round][v.source] = v
        self.by_id[v.id] = v
        logger.debug("insertado %s", v)
        return True

    def _reachable(self, vertex_id: str, target: Round) -> FrozenSet[str]:
        """Ids de la ronda `target` alcanzables desde el vértice (memoizado)."""
        key = (vertex_id, target)
        cached = self._reach.get(key)
        if cached is not None:
            return cached

        found: Set[str] = set()
        frontier: Set[str] = {vertex_id}
        r = self.by_id[vertex_id].round
        while r > target:
            step: Set[str] = set()
            for vid in frontier:
                hit = self._reach.get((vid, target))
                if hit is not None:
                    found.update(hit)
                else:
                    step.update(self.by_id[vid].edges)
            frontier = step
            r -= 1
        found.update(frontier)

        result = frozenset(found)
        self._reach[key] = result
        return result

    def path(self, v: Optional[Vertex], u: Optional[Vertex]) -> bool:
        """True si u es alcanzable desde v siguiendo aristas (v == u cuenta)."""
        if v is None or u is None:
            return False
        if v.id not in self.by_id or u.id not in self.by_id:
            return False
        if u.round > v.round:
            return False
        if u.round == v.round:
            return u.id == v.id
        return u.id in self._reachable(v.id, u.round)

    def causal_history(self, v: Vertex) -> Set[Vertex]:
        """Todos los vértices alcanzables desde v, incluido v."""
        seen: Set[str] = {v.id}
        queue = deque([v.id])
        while queue:
            current = self.by_id[queue.popleft()]
            for edge in current.edges:
                if edge not in seen:
                    seen.add(edge)
                    queue.append(edge)
        return {self.by_id[vid] for vid in seen}

    def get_anchor(self, r: Round) -> Optional[Vertex]:
        """El vértice del líder de la ronda r, o None si no está en la vista."""
        if not is_anchor_round(r):
            raise OddRound(f"la ronda {r} no tiene ancla")
        return self.vertex_at(r, leader(r, self.n))

    def leader(self, r: Round) -> int:
        return leader(r, self.n)
