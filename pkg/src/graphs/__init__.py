"""
Graph model: exact scalars, momenta, weighted two-terminal graphs and graph surgery.
"""

from .graph import Edge, InducedSubgraph, WeightedGraph
from .io import dumps_graph, graph_to_json, load_graph, parse_graph, save_graph
from .momentum import Momentum, parse_momentum
from .operations import (
    complete_graph,
    cycle_graph,
    delete_vertices,
    extend_up_leads,
    parallel_compose,
    path_graph,
    series_compose,
    single_vertex,
    star_graph,
)
from .scalar import GaussianRational, QuadraticScalar

__all__ = [
    'Edge', 'InducedSubgraph', 'WeightedGraph',
    'dumps_graph', 'graph_to_json', 'load_graph', 'parse_graph', 'save_graph',
    'Momentum', 'parse_momentum',
    'complete_graph', 'cycle_graph', 'delete_vertices', 'extend_up_leads',
    'parallel_compose', 'path_graph', 'series_compose', 'single_vertex', 'star_graph',
    'GaussianRational', 'QuadraticScalar',
]
