"""
Characteristic polynomials of weighted graphs.

phi_G(y) = det(yI - H(G)) comes from sympy's division-free Berkowitz
``Matrix.charpoly``, so it is exact over every scalar type in
``src.graphs.scalar``. The Schwenk recursion and the path-sum polynomial are
independent cross-checks built on vertex deletion.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterator, List, Sequence, Tuple, Union

import sympy
from sympy.polys.matrices import DomainMatrix

from src.graphs.graph import Edge, InducedSubgraph, WeightedGraph
from src.graphs.operations import delete_vertices
from src.graphs.scalar import GaussianRational, from_sympy, to_sympy
from src.polynomials.polynomial import Y, Polynomial, poly_gcd
from src.utils.config import ENUMERATION_VERTEX_LIMIT
from src.utils.errors import GraphValidationError, ModeError, ResourceLimitError

logger = logging.getLogger(__name__)

AnyGraph = Union[WeightedGraph, InducedSubgraph]


def _to_matrix(matrix: Sequence[Sequence]) -> sympy.Matrix:
    return sympy.Matrix([[to_sympy(x) for x in row] for row in matrix])


def berkowitz(matrix: Sequence[Sequence]) -> List:
    """
    Coefficients of det(tI - M), highest degree first.

    Args:
        matrix: Square matrix of exact scalars as nested sequences

    Returns:
        [1, c_1, ..., c_n]

    Example:
        >>> berkowitz([[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]])
        [Fraction(1, 1), Fraction(0, 1), Fraction(-1, 1)]
    """
    if len(matrix) == 0:
        return [Fraction(1)]
    poly = _to_matrix(matrix).charpoly(Y, simplify=sympy.expand)
    return [from_sympy(c) for c in poly.all_coeffs()]


@lru_cache(maxsize=8192)
def _charpoly_cached(n: int, edges: Tuple[Edge, ...], mode: str) -> Polynomial:
    graph = InducedSubgraph(n, edges, mode)
    descending = berkowitz(graph.hamiltonian_exact())
    return Polynomial(reversed(descending))


def charpoly(g: AnyGraph) -> Polynomial:
    """
    phi_G(y) = det(yI - H(G)); the empty graph gives 1.

    Hermitian input yields real coefficients, which come back as Fractions.

    Example:
        >>> from src.graphs.operations import path_graph
        >>> charpoly(path_graph(2)).coeffs
        (Fraction(0, 1), Fraction(-2, 1), Fraction(0, 1), Fraction(1, 1))
    """
    if g.n == 0:
        return Polynomial.one()
    return _charpoly_cached(g.n, g.edges, g.mode)


@dataclass(frozen=True)
class CharpolySet:
    """
    The four characteristic polynomials of a two-terminal graph.

    ``phi1`` is phi_{G minus terminal 1}, ``phi2`` the same for terminal 2
    and ``phi12`` removes both. With coincident terminals phi1 = phi2 =
    phi12 = phi_{G minus t}.
    """

    phi: Polynomial
    phi1: Polynomial
    phi2: Polynomial
    phi12: Polynomial

    def reduced(self) -> 'CharpolySet':
        """All four divided by their common monic gcd."""
        common = reduce(poly_gcd, (self.phi1, self.phi2, self.phi12), self.phi)
        if common.degree <= 0:
            return self
        return CharpolySet(self.phi // common, self.phi1 // common,
                           self.phi2 // common, self.phi12 // common)

    @property
    def common_factor(self) -> Polynomial:
        return reduce(poly_gcd, (self.phi1, self.phi2, self.phi12), self.phi)

    def to_json(self) -> dict:
        return {name: getattr(self, name).to_json() for name in ('phi', 'phi1', 'phi2', 'phi12')}


@lru_cache(maxsize=1024)
def vertex_deleted_charpolys(g: WeightedGraph) -> CharpolySet:
    """phi_G, phi_{G minus 1}, phi_{G minus 2}, phi_{G minus 1 minus 2}."""
    t1, t2 = g.terminals
    phi = charpoly(g)
    phi1 = charpoly(delete_vertices(g, {t1}))
    if g.coincident:
        return CharpolySet(phi, phi1, phi1, phi1)
    phi2 = charpoly(delete_vertices(g, {t2}))
    phi12 = charpoly(delete_vertices(g, {t1, t2}))
    return CharpolySet(phi, phi1, phi2, phi12)


def _check_size(g: AnyGraph, limit: int, what: str):
    if g.n > limit:
        raise ResourceLimitError(
            f"{what} enumeration on {g.n} vertices exceeds the limit of {limit}")


def _real_part(w):
    return w.re if isinstance(w, GaussianRational) else w


def _simple_paths(g: AnyGraph, u: int, v: int) -> Iterator[List[int]]:
    """Depth-first enumeration of simple u-v paths as vertex lists."""
    stack = [(u, [u])]
    while stack:
        vertex, path = stack.pop()
        if vertex == v:
            yield path
            continue
        for nxt in sorted(g.neighbours(vertex), reverse=True):
            if nxt not in path:
                stack.append((nxt, path + [nxt]))


def _cycles_through(g: AnyGraph, v: int) -> Iterator[List[int]]:
    """Simple cycles of length >= 3 through v, each once (path[1] < path[-1])."""
    stack = [(v, [v])]
    while stack:
        vertex, path = stack.pop()
        for nxt in sorted(g.neighbours(vertex), reverse=True):
            if nxt == v and len(path) >= 3:
                if path[1] < path[-1]:
                    yield path
            elif nxt != v and nxt not in path:
                stack.append((nxt, path + [nxt]))


def _walk_weight(g: AnyGraph, vertices: Sequence[int], closed: bool = False):
    weight = Fraction(1)
    steps = list(zip(vertices, vertices[1:]))
    if closed:
        steps.append((vertices[-1], vertices[0]))
    for a, b in steps:
        weight = weight * g.weight(a, b)
    return weight


def charpoly_schwenk(g: AnyGraph, v: int, limit: int = ENUMERATION_VERTEX_LIMIT) -> Polynomial:
    """
    Characteristic polynomial by expansion at vertex v.

    phi_G = (y - h_vv) phi_{G-v} - sum_u |w(u,v)|^2 phi_{G-u-v}
            - 2 sum_C Re(w(C)) phi_{G-C}

    over neighbours u of v and simple cycles C through v. The smaller
    polynomials come from ``charpoly``.

    Raises:
        ResourceLimitError: Graph larger than ``limit`` vertices

    Example:
        >>> from src.graphs.operations import cycle_graph
        >>> charpoly_schwenk(cycle_graph(3), 0).coeffs
        (Fraction(-2, 1), Fraction(-3, 1), Fraction(0, 1), Fraction(1, 1))
    """
    if not 0 <= v < g.n:
        raise GraphValidationError(f"Vertex {v} out of range for n={g.n}")
    _check_size(g, limit, "Cycle")
    y = Polynomial.y()
    result = (y - g.potential(v)) * charpoly(delete_vertices(g, {v}))
    for u, w in g.neighbours(v).items():
        strength = w * w.conjugate() if isinstance(w, GaussianRational) else w * w
        result = result - charpoly(delete_vertices(g, {u, v})).scale(strength)
    cycles = 0
    for cycle in _cycles_through(g, v):
        cycles += 1
        term = charpoly(delete_vertices(g, set(cycle)))
        result = result - term.scale(2 * _real_part(_walk_weight(g, cycle, closed=True)))
    logger.debug("Schwenk expansion at vertex %d used %d cycles", v, cycles)
    return result


def path_sum_poly(g: AnyGraph, u: int, v: int, limit: int = ENUMERATION_VERTEX_LIMIT) -> Polynomial:
    """
    Sum over simple u-v paths P of w(P) * phi_{G - P}.

    This is the signed square root of phi_{G-u} phi_{G-v} - phi_G phi_{G-u-v}
    for real weights.

    Raises:
        ModeError: Hermitian-mode graph, or u == v
        ResourceLimitError: Graph larger than ``limit`` vertices
    """
    if g.mode != 'real':
        raise ModeError("path_sum_poly is only defined for real-weighted graphs")
    if u == v:
        raise ModeError("path_sum_poly needs two distinct vertices")
    _check_size(g, limit, "Path")
    total = Polynomial()
    for path in _simple_paths(g, u, v):
        total = total + charpoly(delete_vertices(g, set(path))).scale(_walk_weight(g, path))
    return total


def series_charpoly(g1: WeightedGraph, g2: WeightedGraph) -> Polynomial:
    """
    phi of the series composite through the cut vertex:
    phi_{G1-2} phi_{G2} + phi_{G1} phi_{G2-1} - y phi_{G1-2} phi_{G2-1}.
    """
    if g1.coincident or g2.coincident:
        raise ModeError("series_charpoly needs two distinct terminals on both graphs")
    a = charpoly(g1)
    a_cut = charpoly(delete_vertices(g1, {g1.terminals[1]}))
    b = charpoly(g2)
    b_cut = charpoly(delete_vertices(g2, {g2.terminals[0]}))
    return a_cut * b + a * b_cut - Polynomial.y() * a_cut * b_cut


def interior_charpoly_product(gs: Sequence[WeightedGraph]) -> Polynomial:
    """Product of phi_{G_j - 1 - 2}; the interior charpoly of the parallel composite."""
    result = Polynomial.one()
    for g in gs:
        result = result * vertex_deleted_charpolys(g).phi12
    return result


def bareiss_det(matrix: Sequence[Sequence]):
    """
    Exact determinant over the smallest field holding the entries.

    Uses sympy's ``DomainMatrix``, whose determinant is fraction-free
    elimination over ZZ, QQ or an algebraic extension.

    Example:
        >>> bareiss_det([[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]])
        Fraction(5, 1)
    """
    if len(matrix) == 0:
        return Fraction(1)
    dm = DomainMatrix.from_Matrix(_to_matrix(matrix), extension=True)
    return from_sympy(dm.domain.to_sympy(dm.det()))


def _interpolate(points: Sequence, values: Sequence) -> Polynomial:
    """Interpolating polynomial through (points[i], values[i])."""
    data = [(to_sympy(x), to_sympy(v)) for x, v in zip(points, values)]
    return Polynomial.from_sympy(sympy.expand(sympy.interpolate(data, Y)))


def path_sum_adjugate(g: AnyGraph, u: int, v: int) -> Polynomial:
    """
    Path-sum polynomial as the (u, v) entry of adj(yI - H).

    The entry has degree at most n - 2; it is evaluated as a cofactor at
    n - 1 integer points and interpolated, so no path enumeration is needed.

    Raises:
        ModeError: Hermitian-mode graph, or u == v
    """
    if g.mode != 'real':
        raise ModeError("path_sum_poly is only defined for real-weighted graphs")
    if u == v:
        raise ModeError("path_sum_poly needs two distinct vertices")
    n = g.n
    h = g.hamiltonian_exact()
    points = [Fraction(j) for j in range(max(n - 1, 1))]
    values = []
    for y in points:
        shifted = [[(y if r == c else Fraction(0)) - h[r][c] for c in range(n)] for r in range(n)]
        minor = [row[:u] + row[u + 1:] for r, row in enumerate(shifted) if r != v]
        values.append((-1) ** (u + v) * bareiss_det(minor))
    return _interpolate(points, values)


def path_sum(g: AnyGraph, u: int, v: int) -> Polynomial:
    """
    Path-sum polynomial for production use: simple-path enumeration on small
    graphs, the adjugate entry above ``ENUMERATION_VERTEX_LIMIT`` vertices.
    """
    if g.n > ENUMERATION_VERTEX_LIMIT:
        logger.debug("Path sum on %d vertices via the adjugate", g.n)
        return path_sum_adjugate(g, u, v)
    return path_sum_poly(g, u, v)
