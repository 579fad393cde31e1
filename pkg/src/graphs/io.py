"""
Graph JSON reading and writing.

Format::

    {"n": 3,
     "edges": [{"u": 0, "v": 1, "w": "1"}, {"u": 1, "v": 2, "w": "1/2"}],
     "terminals": [0, 2],
     "mode": "real"}

Weights are rational strings, ``{"re", "im"}`` objects (Hermitian mode) or
``{"a", "b", "c", "d"}`` quadratic scalars.
"""

import json
from pathlib import Path
from typing import Union

from src.graphs.graph import Edge, WeightedGraph
from src.graphs.scalar import scalar_from_json, scalar_to_json
from src.utils.config import SCHEMA
from src.utils.errors import GraphParseError


def parse_graph(text: Union[bytes, str], name: str = None) -> WeightedGraph:
    """
    Parse and validate a graph document.

    Args:
        text: JSON bytes or string
        name: Optional label stored on the graph

    Returns:
        Validated WeightedGraph

    Raises:
        GraphParseError: Malformed JSON or scalar strings
        GraphValidationError: Structural problems (range, duplicates, connectivity)

    Example:
        >>> g = parse_graph('{"n":2,"edges":[{"u":0,"v":1,"w":"1"}],"terminals":[0,1]}')
        >>> g.n, g.terminals
        (2, (0, 1))
    """
    if isinstance(text, bytes):
        try:
            text = text.decode('utf-8')
        except UnicodeDecodeError as e:
            raise GraphParseError(f"Graph file is not UTF-8: {e}") from e
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphParseError(f"Malformed graph JSON: {e}") from e
    if not isinstance(doc, dict):
        raise GraphParseError("Graph JSON must be an object")
    for key in ('n', 'edges', 'terminals'):
        if key not in doc:
            raise GraphParseError(f"Graph JSON missing '{key}'")
    n = doc['n']
    if not isinstance(n, int) or isinstance(n, bool):
        raise GraphParseError(f"'n' must be an integer, got {n!r}")
    if not isinstance(doc['edges'], list):
        raise GraphParseError("'edges' must be a list")
    edges = []
    for item in doc['edges']:
        if not isinstance(item, dict) or not {'u', 'v', 'w'} <= set(item):
            raise GraphParseError(f"Edge entry needs u, v, w: {item!r}")
        u, v = item['u'], item['v']
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (u, v)):
            raise GraphParseError(f"Edge endpoints must be integers: {item!r}")
        edges.append(Edge(u, v, scalar_from_json(item['w'])))
    terminals = doc['terminals']
    if not isinstance(terminals, list) or len(terminals) != 2:
        raise GraphParseError("'terminals' must be a list of two vertex indices")
    mode = doc.get('mode', 'real')
    if mode not in ('real', 'hermitian'):
        raise GraphParseError(f"Unknown mode: {mode!r}")
    return WeightedGraph(n, tuple(edges), tuple(terminals), mode, name=name)


def graph_to_json(g: WeightedGraph) -> dict:
    """Serializable dict with bit-exact weight strings."""
    return {
        "schema": SCHEMA,
        "n": g.n,
        "edges": [{"u": u, "v": v, "w": scalar_to_json(w)} for u, v, w in g.edges],
        "terminals": list(g.terminals),
        "mode": g.mode,
    }


def dumps_graph(g: WeightedGraph, indent: int = None) -> str:
    return json.dumps(graph_to_json(g), indent=indent)


def load_graph(path: Union[str, Path]) -> WeightedGraph:
    """Read a graph file; the file stem becomes the graph name."""
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise GraphParseError(f"Cannot read {path}: {e}") from e
    return parse_graph(data, name=path.stem)


def save_graph(g: WeightedGraph, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_graph(g, indent=2) + "\n")
    return path
