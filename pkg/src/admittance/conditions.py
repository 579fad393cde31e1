"""
S-matrix in mu/nu form and the perfect transmission / reflection predicates.

At y = 2cos k with c = cos k, s = sin k, perfect transmission on the regular
branch means mu1 = mu2 = mu together with the hyperbola

    (nu / s)^2 - ((mu - c) / s)^2 = 1,

equivalently nu^2 - mu^2 + mu y - 1 = 0, which is decided exactly when the
point is exact. The transmitted amplitude is then the unit number
nu / (mu - e^{-ik}) up to the global off-diagonal sign sigma.
"""

import cmath
import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from src.admittance.triple import AdmittancePoint, AdmittanceTriple, evaluate, format_value
from src.graphs.momentum import Momentum
from src.graphs.scalar import is_exact, to_float
from src.polynomials.rational import laurent_expand
from src.scattering.calibration import get_calibration
from src.scattering.smatrix import SignCalibration, SMatrix
from src.utils.config import DEFAULT_TOL, SCHEMA
from src.utils.errors import DegenerateError, ModeError

PERFECT_TRANSMISSION = 'perfect_transmission'
PERFECT_REFLECTION = 'perfect_reflection'
PARTIAL = 'partial'


def _wrap(theta: float) -> float:
    """Angle in (-pi, pi]."""
    theta = math.remainder(theta, 2 * math.pi)
    return math.pi if theta <= -math.pi else theta


@dataclass(frozen=True)
class PTResult:
    """
    Outcome of a perfect transmission / reflection test.

    ``theta`` is the physical transmission phase (sigma applied to the
    stored nu); ``theta_printed`` is the phase of the printed formula on the
    stored nu, which is what the effective-length formula pairs with.
    """

    status: str
    branch: str
    theta: Optional[float] = None
    theta_printed: Optional[float] = None
    hyperbola_residual: Optional[float] = None
    exact: bool = False
    sigma: int = -1
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def is_pt(self) -> bool:
        return self.status == PERFECT_TRANSMISSION

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "status": self.status,
            "branch": self.branch,
            "theta": self.theta,
            "theta_convention": "physical",
            "theta_printed": self.theta_printed,
            "theta_printed_convention": "printed",
            "sigma": self.sigma,
            "hyperbola_residual": self.hyperbola_residual,
            "exact": self.exact,
            "details": {key: (value if isinstance(value, (bool, str)) else format_value(value))
                        for key, value in self.details.items()},
        }


def momentum_of(point: AdmittancePoint) -> Momentum:
    """The momentum in (-pi, 0) with 2cos k = point.y."""
    if point.exact:
        return Momentum.from_y(point.y)
    return Momentum(-math.acos(float(point.y) / 2))


def _denominator(mu1: complex, mu2: complex, nu: complex, z: complex) -> complex:
    return (mu1 - 1 / z) * (mu2 - 1 / z) - nu * nu


def smatrix_from_admittance(p: AdmittancePoint, k: Momentum, cal: SignCalibration = None) -> SMatrix:
    """
    S11 = -((mu1 - e^{-ik})(mu2 - e^{ik}) - nu^2) / Delta, S22 mirrored,
    S12 = sigma 2i sin k nu / Delta with Delta = (mu1 - e^{-ik})(mu2 - e^{-ik}) - nu^2.

    Raises:
        ModeError: Point at a pole
        DegenerateError: Delta = 0
    """
    if not p.finite:
        raise ModeError("smatrix_from_admittance needs a finite point; use check_pt_pole at poles")
    cal = cal or get_calibration()
    z = k.z
    mu1, mu2, nu = (complex(v) for v in (p.mu1, p.mu2, p.nu))
    delta = _denominator(mu1, mu2, nu, z)
    if delta == 0:
        raise DegenerateError(f"mu/nu denominator vanishes at k={k}")
    s11 = -((mu1 - 1 / z) * (mu2 - z) - nu * nu) / delta
    s22 = -((mu1 - z) * (mu2 - 1 / z) - nu * nu) / delta
    s12 = cal.sigma * 2j * math.sin(k.k) * nu / delta
    entries = np.array([[s11, s12], [s12, s22]], dtype=complex)
    return SMatrix(k, entries, 'admittance', p.source, ('exact',) if p.exact else (), cal.sigma)


def admittance_matrix(p: AdmittancePoint, k: Momentum, cal: SignCalibration = None) -> np.ndarray:
    """
    Normalized 2x2 admittance matrix Y with S = (I + Y)^-1 (I - Y).

    Y11 = (mu2 - cos k) / (i sin k), Y22 = (mu1 - cos k) / (i sin k),
    Y12 = Y21 = -sigma nu / (i sin k).
    """
    if not p.finite:
        raise ModeError("admittance_matrix needs a finite point")
    cal = cal or get_calibration()
    c, s = math.cos(k.k), math.sin(k.k)
    mu1, mu2, nu = (complex(v) for v in (p.mu1, p.mu2, p.nu))
    return np.array([[mu2 - c, -cal.sigma * nu], [-cal.sigma * nu, mu1 - c]], dtype=complex) / (1j * s)


def smatrix_from_y(y_matrix: np.ndarray) -> np.ndarray:
    """S = (I + Y)^-1 (I - Y)."""
    eye = np.eye(y_matrix.shape[0], dtype=complex)
    return np.linalg.solve(eye + y_matrix, eye - y_matrix)


def hyperbola_residual(mu, nu, y):
    """
    (nu^2 - (mu - c)^2) / s^2 - 1 at y = 2c; exact for exact inputs.
    """
    sin_sq = 1 - y * y / 4
    return (nu * nu - mu * mu + mu * y - 1) / sin_sq


def phase_from_point(mu, nu, k: Momentum) -> float:
    """
    theta = arg(nu / (mu - e^{-ik})), the inverse of ``hyperbola_param``.

    Example:
        >>> k = Momentum.from_literal('-pi/4')
        >>> round(phase_from_point(0.0, -1.0, k), 12) == round(-math.pi / 4, 12)
        True
    """
    w = complex(nu) / (complex(mu) - cmath.exp(-1j * k.k))
    return _wrap(cmath.phase(w))


def hyperbola_param(theta: float, k: Momentum) -> Tuple[float, float]:
    """
    Point of the hyperbola with transmission phase theta:
    mu = sin(theta - k) / sin(theta), nu = -sin(k) / sin(theta).

    Raises:
        ValueError: theta a multiple of pi
    """
    s = math.sin(theta)
    if abs(s) < 1e-15:
        raise ValueError(f"theta={theta} is a multiple of pi; the hyperbola has no point there")
    return math.sin(theta - k.k) / s, -math.sin(k.k) / s


def check_pt(p: AdmittancePoint, k: Momentum, tol: float = DEFAULT_TOL,
             cal: SignCalibration = None) -> PTResult:
    """
    Perfect transmission test at a point of the admittance triple.

    Exact points are decided in their field (``tol`` ignored). Points at a
    pole are handed to the pole-branch conditions on their Laurent data.

    Args:
        p: Evaluated triple at y = 2cos k
        k: Momentum
        tol: Float-path tolerance for mu1 = mu2 and the hyperbola residual
        cal: Sign calibration (process calibration by default)

    Returns:
        PTResult with status perfect_transmission, perfect_reflection or partial
    """
    cal = cal or get_calibration()
    if not p.finite:
        return _pole_result(p.laurent, p.y, k, cal, p.exact, tol)
    exact = p.exact and is_exact(p.y)
    y = p.y if exact else k.epsilon
    mu1, mu2, nu = p.mu1, p.mu2, p.nu
    mu = (mu1 + mu2) / 2
    residual = hyperbola_residual(mu, nu, y)
    if exact:
        symmetric = mu1 == mu2
        on_hyperbola = residual == 0
        reflecting = nu == 0
    else:
        symmetric = abs(float(mu1) - float(mu2)) <= tol
        on_hyperbola = abs(float(residual)) <= tol
        reflecting = abs(float(nu)) <= tol
    details = {"mu1": mu1, "mu2": mu2, "nu": nu, "symmetric": symmetric}
    result = dict(branch='regular', hyperbola_residual=abs(to_float(residual)),
                  exact=exact, sigma=cal.sigma, details=details)
    if symmetric and on_hyperbola:
        theta_printed = phase_from_point(mu, nu, k)
        theta = _wrap(theta_printed + (math.pi if cal.sigma < 0 else 0.0))
        details["cos_theta_printed"] = (mu - y / 2) / nu if exact else math.cos(theta_printed)
        return PTResult(PERFECT_TRANSMISSION, theta=theta, theta_printed=theta_printed, **result)
    if reflecting:
        return PTResult(PERFECT_REFLECTION, **result)
    return PTResult(PARTIAL, **result)


def _close(a, b, exact: bool, tol: float) -> bool:
    if exact:
        return a == b
    return abs(complex(a) - complex(b)) <= tol


def _pole_result(laurent, y0, k: Momentum, cal: SignCalibration, exact: bool,
                 tol: float = DEFAULT_TOL) -> PTResult:
    mu1, mu2, nu = laurent['mu1'], laurent['mu2'], laurent['nu']
    a1, a2, b = mu1.coefficient(-1), mu2.coefficient(-1), nu.coefficient(-1)
    c1, c2, d0 = mu1.coefficient(0), mu2.coefficient(0), nu.coefficient(0)
    if all(_close(x, 0, exact, tol) for x in (a1, a2, b)):
        raise ValueError(f"No component has a pole at y={y0}")
    product = _close(a1 * a2, b * b, exact, tol)
    equal = _close(a1, a2, exact, tol)
    details = {"mu1_residue": a1, "mu2_residue": a2, "nu_residue": b,
               "mu1_c0": c1, "mu2_c0": c2, "nu_c0": d0,
               "residue_product": product, "residues_equal": equal}
    result = dict(branch='pole', exact=exact, sigma=cal.sigma, details=details)
    if not (product and equal):
        details["leading_order"] = "S11 -> -1 (reflection)"
        return PTResult(PARTIAL, **result)
    s = 1 if (complex(b) / complex(a1)).real > 0 else -1
    y_value = y0 if exact else k.epsilon
    balance = _close(c1 + c2 - 2 * s * d0, y_value, exact, tol)
    details["sign"] = str(s)
    details["balance"] = balance
    if not balance:
        return PTResult(PARTIAL, **result)
    theta_printed = 0.0 if s == 1 else math.pi
    theta = 0.0 if s * cal.sigma == 1 else math.pi
    return PTResult(PERFECT_TRANSMISSION, theta=theta, theta_printed=theta_printed, **result)


def check_pt_pole(t: AdmittanceTriple, y0, k: Momentum, cal: SignCalibration = None,
                  tol: float = DEFAULT_TOL) -> PTResult:
    """
    Pole-branch perfect transmission from the Laurent coefficients at y0:
    mu1_{-1} mu2_{-1} = nu_{-1}^2, mu1_{-1} = mu2_{-1} and
    mu1_0 + mu2_0 - 2 s nu_0 = 2cos k with s = nu_{-1} / mu1_{-1} = +-1.

    The transmission phase is then trivial: theta is 0 or pi.

    Raises:
        ValueError: No component has a pole at y0
    """
    cal = cal or get_calibration()
    exact = is_exact(y0)
    laurent_tol = None if exact else tol
    laurent = {name: laurent_expand(t.component(name), y0, 1, laurent_tol)
               for name in ('mu1', 'mu2', 'nu')}
    return _pole_result(laurent, y0, k, cal, exact, tol)


def check_pr(p: AdmittancePoint, tol: float = DEFAULT_TOL, k: Momentum = None) -> PTResult:
    """
    Perfect reflection: nu = 0. Reports the reflection amplitudes
    S11 = -(mu2 - e^{ik}) / (mu2 - e^{-ik}) and S22 = -(mu1 - e^{ik}) / (mu1 - e^{-ik}).
    """
    if not p.finite:
        raise ModeError("check_pr needs a finite point")
    k = k or momentum_of(p)
    z = k.z
    reflecting = p.nu == 0 if p.exact else abs(float(p.nu)) < tol
    details = {"nu": p.nu}
    if reflecting:
        s11 = -(complex(p.mu2) - z) / (complex(p.mu2) - 1 / z)
        s22 = -(complex(p.mu1) - z) / (complex(p.mu1) - 1 / z)
        details["s11_phase"] = cmath.phase(s11)
        details["s22_phase"] = cmath.phase(s22)
        return PTResult(PERFECT_REFLECTION, 'regular', exact=p.exact,
                        sigma=get_calibration().sigma, details=details)
    return PTResult(PARTIAL, 'regular', exact=p.exact, sigma=get_calibration().sigma,
                    details=details)


def effective_length_from_values(mu, nu, dmu1, dmu2, dnu, y):
    """
    l = -(mu1' + mu2') + 2 cos(theta) nu' + 1 with cos(theta) = (mu - y/2) / nu.

    cos(theta) is the printed-formula phase on the same nu, so flipping the
    sign of nu and nu' together leaves l unchanged.
    """
    cos_theta = (mu - y / 2) / nu
    return -(dmu1 + dmu2) + 2 * cos_theta * dnu + 1


def effective_length(t: AdmittanceTriple, k: Momentum, pt: PTResult):
    """
    Effective length (group delay d arg S12 / dk) at a regular PT point.

    Returns:
        Exact scalar when k is exact, otherwise float

    Raises:
        ModeError: pt is not a regular-branch perfect transmission
    """
    if not pt.is_pt or pt.branch != 'regular':
        raise ModeError("effective_length needs a regular-branch perfect transmission")
    point = evaluate(t, k.y)
    d = evaluate(t.derivative(), point.y)
    y = point.y
    return effective_length_from_values(point.mu, point.nu, d.mu1, d.mu2, d.nu, y)


def parallel_effective_length(points: Sequence[AdmittancePoint], derivatives: Sequence[Tuple],
                              y, counts: Sequence[int] = None):
    """
    Effective length of a parallel composite from block values and derivatives.

    Block mu, nu and their derivatives add (with multiplicities ``counts``)
    before the effective-length formula is applied.
    """
    counts = counts or [1] * len(points)
    mu = sum((c * p.mu for c, p in zip(counts, points)), 0)
    nu = sum((c * p.nu for c, p in zip(counts, points)), 0)
    dmu1 = sum((c * d[0] for c, d in zip(counts, derivatives)), 0)
    dmu2 = sum((c * d[1] for c, d in zip(counts, derivatives)), 0)
    dnu = sum((c * d[2] for c, d in zip(counts, derivatives)), 0)
    return effective_length_from_values(mu, nu, dmu1, dmu2, dnu, y)
