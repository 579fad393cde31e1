"""
Seeded random graphs and exhaustive small graphs shared by the test modules.
"""

import itertools
import random
from fractions import Fraction
from typing import Iterator, List

from src.graphs.graph import Edge, WeightedGraph
from src.graphs.scalar import GaussianRational
from src.utils.errors import GraphValidationError


def random_weight(rng: random.Random) -> Fraction:
    """Nonzero rational in [-3, 3] with a small denominator."""
    while True:
        w = Fraction(rng.randint(-6, 6), rng.randint(1, 2))
        if w != 0:
            return w


def random_graph(rng: random.Random, n: int, extra: float = 0.4, potentials: bool = False,
                 mode: str = 'real', terminals=None) -> WeightedGraph:
    """
    Connected graph on n vertices: a random spanning tree plus each
    remaining pair with probability ``extra``.
    """
    edges: List[Edge] = []
    present = set()
    for v in range(1, n):
        u = rng.randrange(v)
        present.add((u, v))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in present and rng.random() < extra:
                present.add((u, v))
    for u, v in sorted(present):
        w = random_weight(rng)
        if mode == 'hermitian':
            w = GaussianRational(w, Fraction(rng.randint(-2, 2)))
        edges.append(Edge(u, v, w))
    if potentials:
        for v in range(n):
            if rng.random() < 0.5:
                edges.append(Edge(v, v, random_weight(rng)))
    if terminals is None:
        terminals = (0, n - 1) if n > 1 else (0, 0)
    return WeightedGraph(n, tuple(edges), tuple(terminals), mode)


def corpus(seed: int, count: int, sizes=(2, 3, 4, 5), **kwargs) -> List[WeightedGraph]:
    rng = random.Random(seed)
    return [random_graph(rng, rng.choice(sizes), **kwargs) for _ in range(count)]


def unit_graphs(max_n: int, terminals=(0, 1)) -> Iterator[WeightedGraph]:
    """Every connected unit-weight graph on 2..max_n labelled vertices."""
    for n in range(2, max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for size in range(n - 1, len(pairs) + 1):
            for chosen in itertools.combinations(pairs, size):
                edges = tuple(Edge(u, v, Fraction(1)) for u, v in chosen)
                try:
                    yield WeightedGraph(n, edges, tuple(terminals))
                except GraphValidationError:
                    continue
