"""
Weighted graphs with two labelled terminals, and their vertex-deleted subgraphs.
"""

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Literal, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from src.graphs.scalar import GaussianRational, QuadraticScalar, Scalar, scalar_to_json, simplify
from src.utils.errors import GraphValidationError


Mode = Literal['real', 'hermitian']


class Edge(NamedTuple):
    """Weighted edge; u == v encodes a real vertex potential."""
    u: int
    v: int
    w: Scalar


def _conj(w):
    return w.conjugate() if isinstance(w, GaussianRational) else w


def _normalize_edges(n: int, edges, mode: str) -> Tuple[Edge, ...]:
    normalized: Dict[Tuple[int, int], Edge] = {}
    for edge in edges:
        u, v, w = edge
        if not (isinstance(u, int) and isinstance(v, int)):
            raise GraphValidationError(f"Vertex indices must be integers: {edge!r}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphValidationError(f"Edge ({u}, {v}) out of range for n={n}")
        w = simplify(w)
        if mode == 'hermitian' and isinstance(w, QuadraticScalar):
            raise GraphValidationError(
                f"Weight {w!r} on edge ({u}, {v}) is not a Gaussian rational (hermitian mode)")
        if mode == 'hermitian' and not isinstance(w, GaussianRational):
            w = GaussianRational(w, Fraction(0))
        if mode == 'real' and isinstance(w, GaussianRational):
            raise GraphValidationError(f"Complex weight {w!r} on edge ({u}, {v}) in real mode")
        if u == v and isinstance(w, GaussianRational) and not w.is_real:
            raise GraphValidationError(f"Vertex potential at {u} must be real, got {w!r}")
        if u > v:
            u, v, w = v, u, _conj(w)
        if (u, v) in normalized:
            raise GraphValidationError(f"Duplicate edge ({u}, {v})")
        normalized[(u, v)] = Edge(u, v, w)
    return tuple(normalized[key] for key in sorted(normalized))


def _components(n: int, edges: Sequence[Edge]) -> List[List[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in edges:
        parent[find(u)] = find(v)
    groups: Dict[int, List[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return list(groups.values())


class _AdjacencyMixin:
    """Shared views of the weighted adjacency matrix H(G)."""

    n: int
    edges: Tuple[Edge, ...]
    mode: str

    def hamiltonian_exact(self) -> List[List[Scalar]]:
        """H(G) as nested lists of exact scalars (zero-filled)."""
        zero = GaussianRational(0, 0) if self.mode == 'hermitian' else Fraction(0)
        h = [[zero] * self.n for _ in range(self.n)]
        for u, v, w in self.edges:
            h[u][v] = w
            h[v][u] = _conj(w)
        return h

    def hamiltonian(self) -> np.ndarray:
        """H(G) as a complex numpy array."""
        h = np.zeros((self.n, self.n), dtype=complex)
        for u, v, w in self.edges:
            h[u, v] = complex(w)
            h[v, u] = np.conj(complex(w))
        return h

    def neighbours(self, vertex: int) -> Dict[int, Scalar]:
        """Neighbour -> weight omega(vertex, neighbour), potentials excluded."""
        result = {}
        for u, v, w in self.edges:
            if u == v:
                continue
            if u == vertex:
                result[v] = w
            elif v == vertex:
                result[u] = _conj(w)
        return result

    def potential(self, vertex: int) -> Scalar:
        for u, v, w in self.edges:
            if u == v == vertex:
                return w
        return Fraction(0)

    def weight(self, u: int, v: int) -> Scalar:
        """omega(u, v), zero when absent."""
        if u == v:
            return self.potential(u)
        return self.neighbours(u).get(v, Fraction(0))


@dataclass(frozen=True)
class InducedSubgraph(_AdjacencyMixin):
    """
    Vertex-induced subgraph without terminals; may be empty or disconnected.

    ``index_map[i]`` is the vertex of the root graph that vertex ``i`` came from.
    """

    n: int
    edges: Tuple[Edge, ...]
    mode: Mode = 'real'
    index_map: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'edges', _normalize_edges(self.n, self.edges, self.mode))
        if not self.index_map:
            object.__setattr__(self, 'index_map', tuple(range(self.n)))
        if len(self.index_map) != self.n:
            raise GraphValidationError("index_map length must equal n")

    @property
    def is_empty(self) -> bool:
        return self.n == 0


@dataclass(frozen=True)
class WeightedGraph(_AdjacencyMixin):
    """
    Finite connected graph with Hermitian weights and two labelled terminals.

    Terminals may coincide (both leads on one vertex). Construction validates
    index ranges, duplicate edges, the weight mode and connectivity.

    Example:
        >>> g = WeightedGraph(2, [(0, 1, Fraction(1))], (0, 1))
        >>> g.hamiltonian_exact()
        [[Fraction(0, 1), Fraction(1, 1)], [Fraction(1, 1), Fraction(0, 1)]]
    """

    n: int
    edges: Tuple[Edge, ...]
    terminals: Tuple[int, int]
    mode: Mode = 'real'
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise GraphValidationError(f"n must be a positive integer, got {self.n!r}")
        if self.mode not in ('real', 'hermitian'):
            raise GraphValidationError(f"Unknown mode: {self.mode!r}")
        object.__setattr__(self, 'edges', _normalize_edges(self.n, self.edges, self.mode))
        terminals = tuple(self.terminals)
        if len(terminals) != 2 or not all(isinstance(t, int) and 0 <= t < self.n for t in terminals):
            raise GraphValidationError(f"Terminals {self.terminals!r} invalid for n={self.n}")
        object.__setattr__(self, 'terminals', terminals)
        if len(_components(self.n, self.edges)) != 1:
            raise GraphValidationError("Graph is not connected")

    @property
    def coincident(self) -> bool:
        """Both leads attach to the same vertex."""
        return self.terminals[0] == self.terminals[1]

    def as_subgraph(self) -> InducedSubgraph:
        return InducedSubgraph(self.n, self.edges, self.mode)

    def canonical_json(self) -> str:
        payload = {
            "n": self.n,
            "edges": [{"u": u, "v": v, "w": scalar_to_json(w)} for u, v, w in self.edges],
            "terminals": list(self.terminals),
            "mode": self.mode,
        }
        return json.dumps(payload, sort_keys=True, separators=(',', ':'))

    @property
    def graph_hash(self) -> str:
        """Short content hash used to tag results."""
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()[:16]
