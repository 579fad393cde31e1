"""
Vector-sum search for parallel compositions with perfect transmission.

Every block is a vector (mu1, mu2, nu) at the query y and a parallel
composite with counts c is the vector sum_j c_j (mu1_j, mu2_j, nu_j). The
search splits the blocks into two halves, enumerates the distinct sums of
each half, joins the halves on the asymmetry coordinate d = mu1 - mu2
(sorted array, the sum must have d = 0) and filters the joined pairs with
the hyperbola residual nu^2 - mu^2 + mu y - 1. Survivors are decided by
``check_pt`` in exact arithmetic when every value lives in one field.
"""

import logging
import math
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.admittance.conditions import (
    PERFECT_REFLECTION,
    PERFECT_TRANSMISSION,
    PTResult,
    check_pt,
    hyperbola_param,
    parallel_effective_length,
    smatrix_from_admittance,
)
from src.admittance.triple import AdmittancePoint, format_value
from src.designer.library import Block, BlockLibrary
from src.graphs.graph import WeightedGraph
from src.graphs.momentum import Momentum
from src.graphs.operations import parallel_compose
from src.graphs.scalar import common_radicand, is_exact
from src.scattering.oracle import smatrix_oracle
from src.scattering.smatrix import SMatrix
from src.utils.config import (
    ANGULAR_TOL,
    CERTIFICATE_TOL,
    DEFAULT_MAX_PER_BLOCK,
    DEFAULT_MAX_TOTAL_BLOCKS,
    DEFAULT_TOL,
    MAX_HALF_ENUMERATION,
    SCHEMA,
    SEARCH_CHUNK,
)
from src.utils.errors import LibraryError, MixedRadicalError, ModeError

logger = logging.getLogger(__name__)

# relative slack of the float prefilter; survivors are re-decided by check_pt
PREFILTER_TOL = 1e-6


@dataclass(frozen=True)
class CompositionQuery:
    """
    Search bounds and acceptance criteria.

    ``phase_convention`` says which phase ``target_theta`` refers to:
    ``physical`` (sigma applied) or ``printed`` (printed formula on the
    stored nu). ``certify`` runs the oracle on every accepted composite.
    """

    k: Momentum
    target_theta: Optional[float] = None
    max_total_blocks: int = DEFAULT_MAX_TOTAL_BLOCKS
    max_per_block: int = DEFAULT_MAX_PER_BLOCK
    tol: float = DEFAULT_TOL
    require_symmetric: bool = True
    phase_convention: str = 'physical'
    angular_tol: float = ANGULAR_TOL
    certify: bool = True

    def __post_init__(self):
        if self.max_total_blocks < 1 or self.max_per_block < 1:
            raise ValueError(
                f"Search bounds must be positive, got max_total={self.max_total_blocks}, "
                f"max_per={self.max_per_block}")
        if self.tol <= 0 or self.angular_tol <= 0:
            raise ValueError(f"Tolerances must be positive, got tol={self.tol}")
        if self.phase_convention not in ('physical', 'printed'):
            raise ValueError(f"Unknown phase convention: {self.phase_convention}")


@dataclass(frozen=True, eq=False)
class CompositionResult:
    """One composite: block counts, summed triple, PT verdict and certificate."""

    counts: Dict[str, int]
    mu1: object
    mu2: object
    nu: object
    pt: PTResult
    effective_length: Optional[object]
    composed: Optional[WeightedGraph]
    certificate: Optional[SMatrix]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def certificate_defect(self) -> Optional[float]:
        """1 - |S12| for transmission, 1 - |S11| for reflection."""
        if self.certificate is None or self.certificate.size != 2:
            return None
        if self.pt.status == PERFECT_REFLECTION:
            return 1 - abs(self.certificate[0, 0])
        return 1 - abs(self.certificate[0, 1])

    @property
    def certified(self) -> bool:
        defect = self.certificate_defect
        return defect is not None and defect <= CERTIFICATE_TOL

    def label(self) -> str:
        return '+'.join(f"{c}x{name}" for name, c in self.counts.items())

    def to_json(self, nu_sign: int = 1) -> dict:
        return {
            "schema": SCHEMA,
            "counts": self.counts,
            "total": self.total,
            "mu1": format_value(self.mu1),
            "mu2": format_value(self.mu2),
            "nu": format_value(nu_sign * self.nu),
            "convention": "path-sum" if nu_sign == 1 else "printed",
            "pt": self.pt.to_json(),
            "effective_length": format_value(self.effective_length),
            "composed_n": None if self.composed is None else self.composed.n,
            "graph_hash": None if self.composed is None else self.composed.graph_hash,
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "certificate_defect": self.certificate_defect,
        }


@dataclass
class SearchOutcome:
    """Results plus the enumeration coverage."""

    results: List[CompositionResult] = field(default_factory=list)
    truncated: bool = False
    candidates: int = 0
    half_sizes: Tuple[int, int] = (0, 0)

    def __iter__(self):
        return iter(self.results)

    def __len__(self) -> int:
        return len(self.results)


def _exact_field(blocks: Sequence[Block], y) -> bool:
    """All block values and y exact and in one quadratic field."""
    values = [y] + [v for b in blocks for v in b.values]
    if not all(b.point.exact for b in blocks) or not all(is_exact(v) for v in values):
        return False
    try:
        common_radicand(values)
    except MixedRadicalError:
        logger.warning("Block values span several quadratic fields; deciding with floats")
        return False
    return True


class _HalfTable:
    """
    Distinct (mu1, mu2, nu) sums of one half with the count vectors reaching
    each, and float columns for the vectorized join.
    """

    def __init__(self, sums: List[Tuple], members: List[List[Tuple[int, Tuple[int, ...]]]]):
        self.sums = sums
        self.members = members
        as_float = np.array([[float(x) for x in s] for s in sums], dtype=float).reshape(-1, 3)
        self.mu1 = as_float[:, 0]
        self.mu2 = as_float[:, 1]
        self.nu = as_float[:, 2]
        self.d = self.mu1 - self.mu2
        self.min_total = np.array([min(t for t, _ in m) for m in members], dtype=int)

    def __len__(self) -> int:
        return len(self.sums)


def _enumerate_half(blocks: Sequence[Block], q: CompositionQuery, exact: bool,
                    limit: int) -> Tuple[_HalfTable, bool]:
    """
    All count vectors of one half within the bounds, grouped by their sum.

    Returns:
        (table, truncated)
    """
    zero = Fraction(0) if exact else 0.0
    vectors: List[Tuple[Tuple[int, ...], Tuple, int]] = [((), (zero, zero, zero), 0)]
    truncated = False
    for block in blocks:
        values = block.values if exact else tuple(float(v) for v in block.values)
        grown = []
        for counts, sums, total in vectors:
            for c in range(min(q.max_per_block, q.max_total_blocks - total) + 1):
                grown.append((counts + (c,),
                              tuple(s + c * v for s, v in zip(sums, values)),
                              total + c))
                if len(grown) >= limit:
                    truncated = True
                    break
            if truncated:
                break
        vectors = grown
        if truncated:
            logger.warning("Half enumeration reached %d vectors; results are partial", limit)
            # remaining blocks of this half stay at count zero
            width = len(blocks)
            vectors = [(counts + (0,) * (width - len(counts)), sums, total)
                       for counts, sums, total in vectors]
            break
    grouped: Dict[Tuple, List[Tuple[int, Tuple[int, ...]]]] = defaultdict(list)
    for counts, sums, total in vectors:
        grouped[sums].append((total, counts))
    keys = list(grouped)
    return _HalfTable(keys, [grouped[key] for key in keys]), truncated


def _join_chunk(a: _HalfTable, b: _HalfTable, order: np.ndarray, d_sorted: np.ndarray,
                rows: range, y: float, max_total: int) -> List[Tuple[int, int]]:
    """Index pairs (row of a, row of b) passing the float prefilter."""
    pairs = []
    for i in rows:
        width = PREFILTER_TOL * (1 + abs(a.d[i]))
        lo = np.searchsorted(d_sorted, -a.d[i] - width, side='left')
        hi = np.searchsorted(d_sorted, -a.d[i] + width, side='right')
        if lo == hi:
            continue
        idx = order[lo:hi]
        idx = idx[a.min_total[i] + b.min_total[idx] <= max_total]
        if idx.size == 0:
            continue
        mu = (a.mu1[i] + b.mu1[idx] + a.mu2[i] + b.mu2[idx]) / 2
        nu = a.nu[i] + b.nu[idx]
        residual = nu * nu - mu * mu + mu * y - 1
        keep = np.abs(residual) <= PREFILTER_TOL * (1 + nu * nu + mu * mu)
        pairs.extend((i, int(j)) for j in idx[keep])
    return pairs


def _phase_matches(pt: PTResult, q: CompositionQuery) -> bool:
    if q.target_theta is None:
        return True
    theta = pt.theta if q.phase_convention == 'physical' else pt.theta_printed
    gap = math.remainder(theta - q.target_theta, 2 * math.pi)
    return abs(gap) < q.angular_tol


def _sum_point(blocks: Sequence[Block], counts: Sequence[int], y, exact: bool) -> AdmittancePoint:
    zero = Fraction(0) if exact else 0.0
    totals = [zero, zero, zero]
    for block, c in zip(blocks, counts):
        if c:
            values = block.values if exact else (float(v) for v in block.values)
            totals = [t + c * v for t, v in zip(totals, values)]
    return AdmittancePoint(y, *totals, finite=True, exact=exact)


def search(lib: BlockLibrary, q: CompositionQuery, workers: int = 1) -> SearchOutcome:
    """
    Meet-in-the-middle search over parallel compositions of library blocks.

    Args:
        lib: Block library evaluated at ``q.k``
        q: Bounds, tolerance and optional target phase
        workers: Threads sharing the join (results do not depend on it)

    Returns:
        SearchOutcome with results sorted by (total blocks, counts); an
        empty result list means no composite within the bounds

    Raises:
        LibraryError: No usable block
        ModeError: Library evaluated at another momentum
    """
    if abs(lib.k.k - q.k.k) > 1e-15:
        raise ModeError(f"Library is evaluated at k={lib.k}, query asks for k={q.k}")
    blocks = [b for b in lib.blocks if not q.require_symmetric or b.symmetric(q.tol)]
    skipped = len(lib.blocks) - len(blocks)
    if skipped:
        logger.info("Skipping %d asymmetric block(s) (require_symmetric)", skipped)
    if not blocks:
        raise LibraryError("No usable blocks for the search")

    exact = _exact_field(blocks, q.k.y) and q.k.is_exact
    y = q.k.exact_y if exact else q.k.epsilon
    split = (len(blocks) + 1) // 2
    half_a, half_b = blocks[:split], blocks[split:]
    table_a, cut_a = _enumerate_half(half_a, q, exact, MAX_HALF_ENUMERATION)
    table_b, cut_b = _enumerate_half(half_b, q, exact, MAX_HALF_ENUMERATION)
    logger.info("Half sums: %d and %d distinct (exact=%s)", len(table_a), len(table_b), exact)

    order = np.argsort(table_b.d, kind='stable')
    d_sorted = table_b.d[order]
    chunks = [range(i, min(i + SEARCH_CHUNK, len(table_a)))
              for i in range(0, len(table_a), SEARCH_CHUNK)]

    def run(rows: range):
        return _join_chunk(table_a, table_b, order, d_sorted, rows, float(y), q.max_total_blocks)

    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            pair_lists = list(pool.map(run, chunks))
    else:
        pair_lists = [run(rows) for rows in chunks]

    candidates = set()
    for pairs in pair_lists:
        for i, j in pairs:
            for total_a, counts_a in table_a.members[i]:
                for total_b, counts_b in table_b.members[j]:
                    if 0 < total_a + total_b <= q.max_total_blocks:
                        candidates.add(counts_a + counts_b)

    outcome = SearchOutcome(truncated=cut_a or cut_b, candidates=len(candidates),
                            half_sizes=(len(table_a), len(table_b)))
    for counts in sorted(candidates, key=lambda c: (sum(c), c)):
        point = _sum_point(blocks, counts, y, exact)
        pt = check_pt(point, q.k, q.tol)
        if pt.status != PERFECT_TRANSMISSION or not _phase_matches(pt, q):
            continue
        named = {b.name: c for b, c in zip(blocks, counts) if c}
        result = _build_result(lib, named, q.k, point, pt, certify=q.certify)
        if q.certify and not result.certified:
            logger.warning("Composite %s failed its oracle certificate (defect %.3g); dropped",
                           result.label(), result.certificate_defect)
            continue
        outcome.results.append(result)
    outcome.results.sort(key=lambda r: (r.total, tuple(r.counts.get(b.name, 0) for b in blocks)))
    logger.info("Search found %d composite(s) from %d candidate(s)",
                len(outcome.results), outcome.candidates)
    return outcome


def _compose(lib: BlockLibrary, counts: Dict[str, int]) -> Optional[WeightedGraph]:
    graphs = []
    for name, c in counts.items():
        block = lib.get(name)
        if block.graph is None:
            return None
        graphs.extend([block.graph] * c)
    composed = parallel_compose(graphs)
    return WeightedGraph(composed.n, composed.edges, composed.terminals, composed.mode,
                         name='+'.join(f"{c}x{name}" for name, c in counts.items()))


def _build_result(lib: BlockLibrary, counts: Dict[str, int], k: Momentum,
                  point: AdmittancePoint, pt: PTResult, certify: bool = True) -> CompositionResult:
    blocks = [lib.get(name) for name in counts]
    multiplicities = list(counts.values())
    length = None
    if pt.status == PERFECT_TRANSMISSION and pt.branch == 'regular':
        derivatives = [b.derivatives for b in blocks]
        if point.exact:
            length = parallel_effective_length([b.point for b in blocks], derivatives,
                                               point.y, multiplicities)
        else:
            points = [AdmittancePoint(point.y, *(float(v) for v in b.values)) for b in blocks]
            floats = [tuple(float(v) for v in d) for d in derivatives]
            length = parallel_effective_length(points, floats, point.y, multiplicities)
    composed = _compose(lib, counts)
    certificate = None
    if certify:
        if composed is not None:
            certificate = smatrix_oracle(composed, k)
        else:
            certificate = smatrix_from_admittance(point, k)
    return CompositionResult(counts, point.mu1, point.mu2, point.nu, pt, length,
                             composed, certificate)


def verify_composition(lib: BlockLibrary, counts: Dict[str, int], k: Momentum,
                       tol: float = DEFAULT_TOL) -> CompositionResult:
    """
    Compose a multiset of blocks and certify it.

    The summed point is classified by ``check_pt`` (perfect transmission,
    perfect reflection or partial); the certificate is the oracle S-matrix
    of the composed graph, or the mu/nu S-matrix for synthetic blocks.

    Raises:
        LibraryError: Unknown block, pole block or bad counts
        ModeError: Composition invalid
    """
    if not counts or any(c < 0 for c in counts.values()) or sum(counts.values()) == 0:
        raise LibraryError(f"Counts must be non-negative with a positive total: {counts}")
    counts = {name: c for name, c in counts.items() if c}
    blocks = [lib.get(name) for name in counts]
    if abs(lib.k.k - k.k) > 1e-15:
        rebased = BlockLibrary(k)
        for b in blocks:
            rebased.add(b.name, b.triple, b.graph)
        lib, blocks = rebased, [rebased.get(name) for name in counts]
    if any(b.pole for b in blocks):
        raise LibraryError("Pole blocks cannot be summed on the regular branch")
    exact = _exact_field(blocks, k.y) and k.is_exact
    y = k.exact_y if exact else k.epsilon
    point = _sum_point(blocks, list(counts.values()), y, exact)
    pt = check_pt(point, k, tol)
    return _build_result(lib, counts, k, point, pt)


def hyperbola_samples(k: Momentum, n: int) -> pd.DataFrame:
    """
    Points (theta, mu, nu) on the perfect-transmission hyperbola.

    n phases on the open grid of (-pi, 0), the one nearest k moved onto the
    anchor theta = k, and the mirror branch theta + pi (same mu, opposite
    nu). Each branch has exactly n rows. Values follow the
    printed parametrization mu = sin(theta - k)/sin(theta),
    nu = -sin(k)/sin(theta).

    Raises:
        ValueError: n < 2
    """
    if n < 2:
        raise ValueError(f"Need at least 2 samples per branch, got {n}")
    grid = np.linspace(-math.pi, 0.0, n + 2)[1:-1]
    grid[np.argmin(np.abs(grid - k.k))] = k.k
    thetas = np.concatenate([grid, grid + math.pi])
    rows = [(theta, *hyperbola_param(float(theta), k)) for theta in thetas]
    return pd.DataFrame(rows, columns=['theta', 'mu', 'nu'])


def results_frame(results: Sequence[CompositionResult], nu_sign: int = 1) -> pd.DataFrame:
    """Summary table of search results."""
    records = []
    for r in results:
        records.append({
            "counts": r.label(),
            "total": r.total,
            "mu1": float(r.mu1),
            "mu2": float(r.mu2),
            "nu": nu_sign * float(r.nu),
            "status": r.pt.status,
            "theta": r.pt.theta,
            "theta_printed": r.pt.theta_printed,
            "effective_length": None if r.effective_length is None else float(r.effective_length),
            "certificate_defect": r.certificate_defect,
        })
    columns = ["counts", "total", "mu1", "mu2", "nu", "status", "theta", "theta_printed",
               "effective_length", "certificate_defect"]
    return pd.DataFrame.from_records(records, columns=columns)
