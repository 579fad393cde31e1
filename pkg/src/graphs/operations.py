"""
Graph surgery: vertex deletion, parallel/series composition and lead extension.

Also hosts small constructors (paths, cycles, stars) used across the
toolkit's scripts and tests.
"""

from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Union

from src.graphs.graph import Edge, InducedSubgraph, WeightedGraph, _conj
from src.graphs.scalar import Scalar
from src.utils.errors import GraphValidationError, ModeError


AnyGraph = Union[WeightedGraph, InducedSubgraph]


def delete_vertices(g: AnyGraph, s: Iterable[int]) -> InducedSubgraph:
    """
    Remove the vertices ``s`` and their incident edges.

    The remaining vertices are renumbered in increasing order; the
    result's ``index_map`` points back to the vertices of the root graph
    (composing through repeated deletions).

    Args:
        g: Graph or previously deleted subgraph
        s: Vertex indices of ``g`` to remove

    Returns:
        InducedSubgraph, possibly empty or disconnected

    Example:
        >>> tri = cycle_graph(3)
        >>> delete_vertices(tri, {0}).n
        2
    """
    removed = set(s)
    for vertex in removed:
        if not (isinstance(vertex, int) and 0 <= vertex < g.n):
            raise GraphValidationError(f"Vertex {vertex!r} out of range for n={g.n}")
    keep = [x for x in range(g.n) if x not in removed]
    position = {old: new for new, old in enumerate(keep)}
    edges = [
        Edge(position[u], position[v], w)
        for u, v, w in g.edges
        if u in position and v in position
    ]
    root_map = g.index_map if isinstance(g, InducedSubgraph) else tuple(range(g.n))
    return InducedSubgraph(len(keep), tuple(edges), g.mode,
                           tuple(root_map[old] for old in keep))


def _check_same_mode(graphs: Sequence[WeightedGraph]) -> str:
    modes = {g.mode for g in graphs}
    if len(modes) != 1:
        raise ModeError(f"Cannot compose graphs with mixed modes {sorted(modes)}")
    return modes.pop()


def _accumulate(table: Dict, u: int, v: int, w: Scalar):
    """Add weight w on (u, v), keeping u <= v orientation."""
    if u > v:
        u, v, w = v, u, _conj(w)
    table[(u, v)] = table.get((u, v), Fraction(0)) + w


def _edges_from(table: Dict) -> List[Edge]:
    return [Edge(u, v, w) for (u, v), w in sorted(table.items()) if w != 0]


def parallel_compose(gs: Sequence[WeightedGraph]) -> WeightedGraph:
    """
    Glue two-terminal graphs along their terminals.

    All terminal-1 vertices become vertex 0 and all terminal-2 vertices
    vertex 1 of the result; the interior vertices of each block follow in
    input order. Direct terminal-terminal edges and terminal potentials are
    summed.

    Raises:
        ModeError: Coincident-terminal block or mixed modes
    """
    if not gs:
        raise GraphValidationError("parallel_compose needs at least one graph")
    mode = _check_same_mode(gs)
    table: Dict = {}
    offset = 2
    for g in gs:
        if g.coincident:
            raise ModeError("Graphs with coincident terminals cannot be composed in parallel")
        t1, t2 = g.terminals
        relabel = {t1: 0, t2: 1}
        for x in range(g.n):
            if x not in relabel:
                relabel[x] = offset
                offset += 1
        for u, v, w in g.edges:
            _accumulate(table, relabel[u], relabel[v], w)
    return WeightedGraph(offset, tuple(_edges_from(table)), (0, 1), mode)


def series_compose(g1: WeightedGraph, g2: WeightedGraph) -> WeightedGraph:
    """
    Identify terminal 2 of ``g1`` with terminal 1 of ``g2``.

    Vertex order of the result: terminal 1 of g1, interior of g1, the glued
    vertex, interior of g2, terminal 2 of g2. Potentials on the glued
    vertex add.

    Raises:
        ModeError: Coincident terminals or mixed modes
    """
    mode = _check_same_mode([g1, g2])
    if g1.coincident or g2.coincident:
        raise ModeError("series_compose needs two distinct terminals on both graphs")
    relabel1: Dict[int, int] = {g1.terminals[0]: 0}
    index = 1
    for x in range(g1.n):
        if x not in g1.terminals:
            relabel1[x] = index
            index += 1
    glued = index
    relabel1[g1.terminals[1]] = glued
    index += 1
    relabel2: Dict[int, int] = {g2.terminals[0]: glued}
    for x in range(g2.n):
        if x not in g2.terminals:
            relabel2[x] = index
            index += 1
    relabel2[g2.terminals[1]] = index
    table: Dict = {}
    for g, relabel in ((g1, relabel1), (g2, relabel2)):
        for u, v, w in g.edges:
            _accumulate(table, relabel[u], relabel[v], w)
    return WeightedGraph(index + 1, tuple(_edges_from(table)), (0, index), mode)


def extend_up_leads(g: WeightedGraph) -> WeightedGraph:
    """
    Pull one lead vertex into the graph on each terminal (G -> G^{+1}).

    Two new vertices ``n`` and ``n + 1`` hang off terminal 1 and terminal 2
    with unit weight and become the new terminals, so coincident terminals
    come out distinct.
    """
    t1, t2 = g.terminals
    one = Fraction(1)
    edges = list(g.edges) + [Edge(t1, g.n, one), Edge(t2, g.n + 1, one)]
    return WeightedGraph(g.n + 2, tuple(edges), (g.n, g.n + 1), g.mode)


def path_graph(length: int, weight: Scalar = Fraction(1)) -> WeightedGraph:
    """Path with ``length`` edges, terminals at both ends."""
    if length < 1:
        raise GraphValidationError(f"Path length must be >= 1, got {length}")
    edges = tuple(Edge(i, i + 1, weight) for i in range(length))
    return WeightedGraph(length + 1, edges, (0, length), name=f"path_{length}")


def cycle_graph(n: int, terminals=(0, 1)) -> WeightedGraph:
    """Unit-weight cycle on n >= 3 vertices."""
    edges = tuple(Edge(i, (i + 1) % n, Fraction(1)) for i in range(n))
    return WeightedGraph(n, edges, tuple(terminals), name=f"cycle_{n}")


def star_graph(arms: int, terminals=(0, 0)) -> WeightedGraph:
    """Unit-weight star K_{1,arms}, centre 0; terminals default to the centre."""
    edges = tuple(Edge(0, i, Fraction(1)) for i in range(1, arms + 1))
    return WeightedGraph(arms + 1, edges, tuple(terminals), name=f"star_{arms}")


def complete_graph(n: int, terminals=(0, 1)) -> WeightedGraph:
    edges = tuple(Edge(u, v, Fraction(1)) for u in range(n) for v in range(u + 1, n))
    return WeightedGraph(n, edges, tuple(terminals), name=f"complete_{n}")


def single_vertex(potential: Scalar = Fraction(0)) -> WeightedGraph:
    """One vertex carrying both terminals: the bare infinite line."""
    edges = (Edge(0, 0, potential),) if potential != 0 else ()
    return WeightedGraph(1, edges, (0, 0), name="vertex")
