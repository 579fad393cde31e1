"""
First-principles S-matrix from the Schur complement on the terminal block.

    Q(G, 1/z) = (1/z) I - H(U) - B^dagger ((z + 1/z) I - H(G minus U))^-1 B
    S(G, z)   = -I - (z - 1/z) Q^-1

When the interior resolvent is singular at 2cos(k) the computation moves to
the graph extended one site up every lead (whose interior is all of G) and
strips the z**2 lead phase afterwards. If that is singular too, k is
perturbed by +-h and +-2h and the symmetric averages are Richardson
extrapolated back to k.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from src.graphs.graph import WeightedGraph
from src.graphs.momentum import Momentum
from src.graphs.scalar import GaussianRational, QuadraticScalar
from src.scattering.smatrix import SMatrix
from src.utils.config import (
    CONDITION_WARNING,
    EXTENDED_DPS,
    EXTRAPOLATION_DIVERGENCE,
    PERTURBATION_STEP,
    SINGULAR_CONDITION,
)
from src.utils.errors import GraphValidationError, SingularityError

logger = logging.getLogger(__name__)


class _Singular(Exception):
    def __init__(self, eigenvalue: float, condition: float):
        super().__init__(f"interior eigenvalue {eigenvalue:.12g} at the operating energy")
        self.eigenvalue = eigenvalue
        self.condition = condition


@dataclass(frozen=True)
class BlockDecomposition:
    """
    H(G) split into terminal and interior blocks, terminals first.

    ``b`` is the interior-by-terminal coupling block, so
    H = [[h_u, b^dagger], [b, h_int]] in the ordering ``terminals + interior``.
    """

    h_u: np.ndarray
    b: np.ndarray
    h_int: np.ndarray
    terminals: Tuple[int, ...]
    interior: Tuple[int, ...]

    @classmethod
    def of(cls, h: np.ndarray, terminals: Sequence[int]) -> 'BlockDecomposition':
        terminals = tuple(terminals)
        if len(set(terminals)) != len(terminals):
            raise GraphValidationError("Block decomposition needs distinct terminal vertices")
        interior = tuple(x for x in range(h.shape[0]) if x not in terminals)
        t, i = list(terminals), list(interior)
        return cls(h[np.ix_(t, t)], h[np.ix_(i, t)], h[np.ix_(i, i)], terminals, interior)

    def reassemble(self) -> np.ndarray:
        """H in the terminals-first ordering."""
        return np.block([[self.h_u, self.b.conj().T], [self.b, self.h_int]])

    def interior_gap(self, y: float) -> Tuple[float, float]:
        """(nearest interior eigenvalue, scale-relative condition of yI - H_int)."""
        if not self.interior:
            return float('nan'), 1.0
        eigenvalues = np.linalg.eigvalsh(self.h_int)
        nearest = eigenvalues[np.argmin(np.abs(eigenvalues - y))]
        gap = abs(y - nearest)
        scale = max(1.0, abs(y), float(np.max(np.abs(eigenvalues))))
        return float(nearest), (np.inf if gap == 0 else scale / gap)


def _exact_hamiltonian(g: WeightedGraph) -> List[List]:
    return g.hamiltonian_exact()


def _extend_leads(h: List[List], leads: Sequence[int]) -> Tuple[List[List], Tuple[int, ...]]:
    """Attach one new vertex per lead; the new vertices become the terminals."""
    n, m = len(h), len(leads)
    zero = Fraction(0)
    ext = [list(row) + [zero] * m for row in h] + [[zero] * (n + m) for _ in range(m)]
    for j, t in enumerate(leads):
        ext[t][n + j] = Fraction(1)
        ext[n + j][t] = Fraction(1)
    return ext, tuple(range(n, n + m))


def _to_numpy(h: List[List]) -> np.ndarray:
    return np.array([[complex(x) for x in row] for row in h], dtype=complex).reshape(len(h), len(h))


def _mp_scalar(x):
    if isinstance(x, GaussianRational):
        return mpmath.mpc(_mp_scalar(x.re), _mp_scalar(x.im))
    if isinstance(x, QuadraticScalar):
        return _mp_scalar(x.a) + _mp_scalar(x.b) * mpmath.sqrt(x.d)
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpmathify(x)


def _mp_k(k: Momentum):
    """k in working precision, exact for the named operating points."""
    if k.exact_y is not None:
        return -mpmath.acos(_mp_scalar(k.exact_y) / 2)
    return mpmath.mpf(k.k)


def _schur_numpy(dec: BlockDecomposition, k: float) -> Tuple[np.ndarray, float]:
    z = np.exp(1j * k)
    y = 2 * np.cos(k)
    nearest, condition = dec.interior_gap(y)
    if condition > SINGULAR_CONDITION:
        raise _Singular(nearest, condition)
    eye = np.eye(len(dec.terminals), dtype=complex)
    q = eye / z - dec.h_u
    if dec.interior:
        resolvent_b = np.linalg.solve(y * np.eye(len(dec.interior)) - dec.h_int, dec.b)
        q = q - dec.b.conj().T @ resolvent_b
    s = -eye - (z - 1 / z) * np.linalg.solve(q, eye)
    return s, condition


def _schur_mpmath(h_exact: List[List], dec: BlockDecomposition, k) -> Tuple[np.ndarray, float]:
    y_float = 2 * float(mpmath.cos(k))
    nearest, condition = dec.interior_gap(y_float)
    if condition > SINGULAR_CONDITION:
        raise _Singular(nearest, condition)
    z = mpmath.expj(k)
    y = 2 * mpmath.cos(k)
    t, i = dec.terminals, dec.interior

    def block(rows, cols):
        return mpmath.matrix([[_mp_scalar(h_exact[r][c]) for c in cols] for r in rows]) \
            if rows and cols else None

    size = len(t)
    q = mpmath.eye(size) / z - block(t, t)
    if i:
        m = y * mpmath.eye(len(i)) - block(i, i)
        b = block(i, t)
        q = q - b.H * (mpmath.inverse(m) * b)
    s = -mpmath.eye(size) - (z - 1 / z) * mpmath.inverse(q)
    out = np.array([[complex(s[r, c]) for c in range(size)] for r in range(size)], dtype=complex)
    return out, condition


def _solve(h_exact: List[List], leads: Tuple[int, ...], k, precision: str):
    """S at one momentum with the extended-lead fallback; returns (S, condition, flags)."""
    k_float = float(k)
    flags: List[str] = []

    def attempt(h, terminals):
        dec = BlockDecomposition.of(_to_numpy(h), terminals)
        if precision == 'extended':
            return _schur_mpmath(h, dec, k)
        return _schur_numpy(dec, k_float)

    if len(set(leads)) == len(leads):
        try:
            s, condition = attempt(h_exact, leads)
            return s, condition, flags
        except _Singular as e:
            logger.debug("Interior singular (eigenvalue %.6g); extending the leads", e.eigenvalue)
    h_ext, ext_leads = _extend_leads(h_exact, leads)
    s_ext, condition = attempt(h_ext, ext_leads)
    flags.append('extended_leads')
    z = np.exp(1j * k_float)
    return s_ext / z ** 2, condition, flags


def smatrix_oracle(g: WeightedGraph, k: Momentum, precision: str = 'float64',
                   terminals: Optional[Sequence[int]] = None) -> SMatrix:
    """
    Ground-truth S-matrix by the Schur complement.

    Args:
        g: Graph; its two terminals are the leads unless ``terminals`` is given
        k: Momentum in (-pi, 0)
        precision: ``'float64'`` (numpy) or ``'extended'`` (mpmath, EXTENDED_DPS digits)
        terminals: Optional list of lead vertices (any N >= 1, repeats allowed)

    Returns:
        SMatrix with method ``'oracle'``

    Raises:
        SingularityError: Both formulations singular and the perturbed
            extrapolation did not settle

    Example:
        >>> from src.graphs.operations import path_graph
        >>> s = smatrix_oracle(path_graph(1), Momentum.from_literal('-pi/4'))
        >>> abs(s[0, 1] - k_phase(s.k)) < 1e-12
        True
    """
    leads = tuple(g.terminals if terminals is None else terminals)
    if not leads or not all(isinstance(t, int) and 0 <= t < g.n for t in leads):
        raise GraphValidationError(f"Invalid lead vertices {leads!r} for n={g.n}")
    if precision not in ('float64', 'extended'):
        raise ValueError(f"Unknown precision: {precision}")
    h_exact = _exact_hamiltonian(g)
    flags: List[str] = []
    if precision == 'extended':
        flags.append('extended_precision')
    with mpmath.workdps(EXTENDED_DPS):
        k_value = _mp_k(k) if precision == 'extended' else k.k
        try:
            s, condition, more = _solve(h_exact, leads, k_value, precision)
            flags.extend(more)
        except _Singular as e:
            logger.warning("Oracle singular at k=%s (eigenvalue %.6g); perturbing k",
                           k, e.eigenvalue)
            s, condition = _perturbed(h_exact, leads, k, precision, e.eigenvalue)
            flags.append('perturbed')
    if condition > CONDITION_WARNING:
        logger.warning("Ill-conditioned interior solve at k=%s (condition %.3g)", k, condition)
        flags.append('ill_conditioned')
    return SMatrix(k, s, 'oracle', g.graph_hash, tuple(flags), condition=condition)


def _perturbed(h_exact, leads, k: Momentum, precision: str, eigenvalue: float):
    step = PERTURBATION_STEP

    def averaged(h):
        values = []
        for sign in (1, -1):
            kk = k.k + sign * h
            k_value = mpmath.mpf(kk) if precision == 'extended' else kk
            try:
                s, _, _ = _solve(h_exact, leads, k_value, precision)
            except _Singular as e:
                raise SingularityError(
                    f"Oracle singular at k={kk!r} as well", eigenvalue=e.eigenvalue) from e
            values.append(s)
        return (values[0] + values[1]) / 2

    near, far = averaged(step), averaged(2 * step)
    divergence = float(np.max(np.abs(near - far)))
    if divergence > EXTRAPOLATION_DIVERGENCE:
        raise SingularityError(
            f"Perturbed oracle diverges at k={k} (spread {divergence:.3g}); "
            f"interior eigenvalue {eigenvalue:.12g}", eigenvalue=eigenvalue)
    return (4 * near - far) / 3, 1 / step


def k_phase(k: Momentum, power: int = 1) -> complex:
    """z**power = exp(i * power * k)."""
    return k.z ** power
