"""
Two-terminal S-matrix from the four characteristic polynomials.

With y = z + 1/z and the charpolys phi, phi1, phi2, phi12 (terminal 1,
terminal 2 and both removed):

    D   = phi - z (phi1 + phi2) + z^2 phi12
    S11 = -(phi - phi1/z - z phi2 + phi12) / D
    S12 = sigma (z - 1/z) p / D

where p is the path-sum polynomial. Polynomials are evaluated exactly at
the momentum's exact y when there is one, otherwise in floating point.
"""

import cmath
import logging
from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from src.graphs.graph import WeightedGraph
from src.graphs.momentum import Momentum
from src.graphs.scalar import scalar_to_json
from src.polynomials.charpoly import CharpolySet, path_sum, vertex_deleted_charpolys
from src.polynomials.polynomial import Polynomial
from src.scattering.smatrix import SignCalibration, SMatrix
from src.utils.config import DEFAULT_TOL
from src.utils.errors import DegenerateError, MixedRadicalError, ModeError

logger = logging.getLogger(__name__)


def evaluate_at(poly: Polynomial, k: Momentum):
    """
    p(2cos k), exactly when possible.

    Returns:
        (value, exact flag)
    """
    if k.exact_y is not None:
        try:
            return poly(k.exact_y), True
        except MixedRadicalError:
            logger.warning("Mixed radicals evaluating at y=%s; using floats", k.exact_y)
    return poly(k.epsilon), False


def _values(polys: CharpolySet, k: Momentum):
    exact = True
    out = []
    for p in (polys.phi, polys.phi1, polys.phi2, polys.phi12):
        value, ok = evaluate_at(p, k)
        exact = exact and ok
        out.append(value)
    return out, exact


def _reduced_with_path_sum(g: WeightedGraph):
    """Charpolys and path sum divided by the common factor of the four charpolys."""
    polys = vertex_deleted_charpolys(g)
    common = polys.common_factor
    p = path_sum(g, *g.terminals) if g.mode == 'real' else None
    if common.degree > 0:
        polys = polys.reduced()
        if p is not None:
            p = p // common
    return polys, p


def smatrix_closed2(g: WeightedGraph, k: Momentum, cal: SignCalibration) -> SMatrix:
    """
    Closed-form 2x2 S-matrix for two distinct terminals.

    Hermitian graphs get S11, S22 and the transmission probability; their
    off-diagonal entries are NaN.

    Raises:
        ModeError: Coincident terminals (use ``same_vertex_smatrix``)
        DegenerateError: D vanishes after removing the common factor
    """
    if g.coincident:
        raise ModeError("smatrix_closed2 needs two distinct terminals; use same_vertex_smatrix")
    polys, p = _reduced_with_path_sum(g)
    (phi, phi1, phi2, phi12), exact = _values(polys, k)
    if exact and phi == phi12 and k.exact_y * phi == phi1 + phi2:
        raise DegenerateError(f"Closed-form denominator vanishes at k={k}")
    z = k.z
    a, b1, b2, c = (complex(v) for v in (phi, phi1, phi2, phi12))
    d = a - z * (b1 + b2) + z * z * c
    if abs(d) == 0:
        raise DegenerateError(f"Closed-form denominator vanishes at k={k}")
    s11 = -(a - b1 / z - z * b2 + c) / d
    s22 = -(a - b2 / z - z * b1 + c) / d
    flags = ('exact',) if exact else ()
    if p is None:
        s12 = complex('nan')
        probability = transmission_probability(g, k)
    else:
        pv, _ = evaluate_at(p, k)
        s12 = cal.sigma * (z - 1 / z) * complex(pv) / d
        probability = None
    entries = np.array([[s11, s12], [s12, s22]], dtype=complex)
    return SMatrix(k, entries, 'closed', g.graph_hash, flags, cal.sigma, probability)


def same_vertex_smatrix(g: WeightedGraph, k: Momentum, cal: SignCalibration) -> SMatrix:
    """
    Closed form for both leads on one vertex:
    S11 = -(phi - y phi1) / (phi - 2z phi1), S12 = sigma (z - 1/z) phi1 / (phi - 2z phi1).

    Raises:
        ModeError: Distinct terminals
        DegenerateError: Denominator zero after removing the common factor
    """
    if not g.coincident:
        raise ModeError("same_vertex_smatrix needs coincident terminals")
    polys = vertex_deleted_charpolys(g).reduced()
    (phi, phi1, _, _), exact = _values(polys, k)
    if exact and phi == 0 and phi1 == 0:
        raise DegenerateError(f"Same-vertex denominator vanishes at k={k}")
    z, y = k.z, k.epsilon
    a, b = complex(phi), complex(phi1)
    d = a - 2 * z * b
    if abs(d) == 0:
        raise DegenerateError(f"Same-vertex denominator vanishes at k={k}")
    s11 = -(a - y * b) / d
    s12 = cal.sigma * (z - 1 / z) * b / d
    entries = np.array([[s11, s12], [s12, s11]], dtype=complex)
    flags = ('exact',) if exact else ()
    return SMatrix(k, entries, 'closed', g.graph_hash, flags, cal.sigma)


def smatrix_closed(g: WeightedGraph, k: Momentum, cal: SignCalibration) -> SMatrix:
    """Dispatch on the terminal layout."""
    if g.coincident:
        return same_vertex_smatrix(g, k, cal)
    return smatrix_closed2(g, k, cal)


def transmission_probability(g: WeightedGraph, k: Momentum) -> float:
    """
    |S12|^2 = |z - 1/z|^2 (phi1 phi2 - phi phi12) / |D|^2.

    Valid for Hermitian weights as well; no square root is taken.
    """
    polys = vertex_deleted_charpolys(g).reduced()
    (phi, phi1, phi2, phi12), _ = _values(polys, k)
    z = k.z
    if g.coincident:
        d = complex(phi) - 2 * z * complex(phi1)
        return abs(z - 1 / z) ** 2 * float(phi1) ** 2 / abs(d) ** 2
    d = complex(phi) - z * (complex(phi1) + complex(phi2)) + z * z * complex(phi12)
    numerator = float(phi1 * phi2 - phi * phi12)
    return abs(z - 1 / z) ** 2 * numerator / abs(d) ** 2


@dataclass(frozen=True)
class CharpolyPTCheck:
    """
    Perfect transmission decided from charpoly values at eps = 2cos k.

    Conditions: phi1 = phi2 and phi - eps phi1 + phi12 = 0. ``degenerate``
    marks the case where all four vanish, which the conditions do not cover.
    """

    holds: bool
    degenerate: bool
    exact: bool
    values: Dict[str, object] = field(default_factory=dict)

    def to_json(self) -> dict:
        def fmt(v):
            return float(v) if isinstance(v, float) else scalar_to_json(v)
        return {
            "holds": self.holds,
            "degenerate": self.degenerate,
            "exact": self.exact,
            "values": {key: fmt(v) for key, v in self.values.items()},
        }


def check_pt_charpoly(g: WeightedGraph, k: Momentum, tol: float = DEFAULT_TOL) -> CharpolyPTCheck:
    """
    Charpoly form of the perfect-transmission test.

    Exact arithmetic when k carries an exact y (``tol`` ignored), otherwise
    values are compared with absolute tolerance ``tol``.
    """
    if g.coincident:
        raise ModeError("check_pt_charpoly needs two distinct terminals")
    (phi, phi1, phi2, phi12), exact = _values(vertex_deleted_charpolys(g), k)
    eps = k.exact_y if exact else k.epsilon
    balance = phi - eps * phi1 + phi12
    symmetric = phi1 - phi2
    if exact:
        degenerate = phi == 0 and phi1 == 0 and phi2 == 0 and phi12 == 0
        holds = symmetric == 0 and balance == 0 and not degenerate
    else:
        def small(v):
            return abs(v) <= tol
        degenerate = all(small(v) for v in (phi, phi1, phi2, phi12))
        holds = small(symmetric) and small(balance) and not degenerate
    values = {"phi": phi, "phi1": phi1, "phi2": phi2, "phi12": phi12,
              "symmetry": symmetric, "balance": balance}
    return CharpolyPTCheck(holds, degenerate, exact, values)


def transmission_phase_charpoly(g: WeightedGraph, k: Momentum, cal: SignCalibration) -> complex:
    """
    Unit transmission phase at a perfect-transmission momentum:
    sigma sgn(p) (e^{-ik} phi12 - phi1) / |e^{-ik} phi12 - phi1|.

    sgn(p) is the sign of the path sum at 2cos k (taken as +1 for
    Hermitian graphs, where the path sum is not defined).

    Raises:
        DegenerateError: phi1 and phi12 both vanish at 2cos k
    """
    polys, p = _reduced_with_path_sum(g)
    (_, phi1, _, phi12), _ = _values(polys, k)
    w = cmath.exp(-1j * k.k) * complex(phi12) - complex(phi1)
    if abs(w) == 0:
        raise DegenerateError(f"Transmission phase undefined at k={k}")
    sign = 1
    if p is not None and float(evaluate_at(p, k)[0]) < 0:
        sign = -1
    return cal.sigma * sign * w / abs(w)
