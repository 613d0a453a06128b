from .vertex import Vertex, VertexId, PartyId, Round, leader, is_anchor_round, genesis_vertices, vertex_digest
from .view import DagView

__all__ = ['Vertex', 'VertexId', 'PartyId', 'Round', 'leader', 'is_anchor_round',
           'genesis_vertices', 'vertex_digest', 'DagView']
