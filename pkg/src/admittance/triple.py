"""
The admittance triple (mu1, mu2, nu) of a real-weighted two-terminal graph.

    mu1 = y - phi_{G-1} / phi_{G-1-2}
    mu2 = y - phi_{G-2} / phi_{G-1-2}
    nu  = p(G; 1, 2) / phi_{G-1-2}

mu1 is the self-energy seen at terminal 2 and mu2 the one at terminal 1;
nu keeps the sign of the path-sum polynomial p.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from src.graphs.graph import WeightedGraph
from src.graphs.scalar import is_exact, scalar_to_json, to_float
from src.polynomials.charpoly import path_sum, vertex_deleted_charpolys
from src.polynomials.polynomial import Polynomial
from src.polynomials.rational import LaurentExpansion, RationalFunction, laurent_expand
from src.utils.config import DEFAULT_TOL, POLE_TOL, SCHEMA
from src.utils.errors import MixedRadicalError, ModeError

logger = logging.getLogger(__name__)

COMPONENTS = ('mu1', 'mu2', 'nu')


def _as_rf(value) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, Polynomial):
        return RationalFunction(value)
    return RationalFunction.constant(value)


def format_value(value):
    """JSON form of an exact scalar or a float."""
    if value is None:
        return None
    if is_exact(value):
        return scalar_to_json(value)
    if isinstance(value, complex):
        if abs(value.imag) > 1e-12 * max(1.0, abs(value.real)):
            return {"re": value.real, "im": value.imag}
        return value.real
    return to_float(value)


@dataclass(frozen=True)
class AdmittanceTriple:
    """
    mu1, mu2 and nu as reduced rational functions of y.

    ``origin`` is ``from_graph`` for triples computed from a graph and
    ``synthetic`` for triples given directly as functions.
    """

    mu1: RationalFunction
    mu2: RationalFunction
    nu: RationalFunction
    source: Optional[str] = None
    origin: str = 'from_graph'

    def __post_init__(self):
        for name in COMPONENTS:
            object.__setattr__(self, name, _as_rf(getattr(self, name)))

    @property
    def symmetric(self) -> bool:
        return self.mu1 == self.mu2

    def component(self, name: str) -> RationalFunction:
        return getattr(self, name)

    def derivative(self) -> 'AdmittanceTriple':
        """Component-wise d/dy."""
        return AdmittanceTriple(self.mu1.derivative(), self.mu2.derivative(),
                                self.nu.derivative(), self.source, 'derivative')

    def evaluate(self, y, tol: float = None) -> 'AdmittancePoint':
        return evaluate(self, y, tol)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "source": self.source,
            "origin": self.origin,
            "convention": "path-sum",
            **{name: self.component(name).to_json() for name in COMPONENTS},
        }


def admittance(g: WeightedGraph) -> AdmittanceTriple:
    """
    Exact admittance triple of a graph.

    Raises:
        ModeError: Hermitian weights or coincident terminals

    Example:
        >>> from src.graphs.operations import path_graph
        >>> t = admittance(path_graph(2))
        >>> t.mu1 == t.nu == RationalFunction(Polynomial.one(), Polynomial.y())
        True
    """
    if g.mode != 'real':
        raise ModeError("Admittance triples are defined for real weights only")
    if g.coincident:
        raise ModeError("Admittance triples need two distinct terminals")
    polys = vertex_deleted_charpolys(g)
    y = Polynomial.y()
    mu1 = RationalFunction(y * polys.phi12 - polys.phi1, polys.phi12)
    mu2 = RationalFunction(y * polys.phi12 - polys.phi2, polys.phi12)
    nu = RationalFunction(path_sum(g, *g.terminals), polys.phi12)
    return AdmittanceTriple(mu1, mu2, nu, g.name or g.graph_hash, 'from_graph')


def synthetic_triple(mu1, nu, mu2=None, name: str = None) -> AdmittanceTriple:
    """
    Triple given directly by its functions (or constants); mu2 defaults to mu1.

    Example:
        >>> y = Polynomial.y()
        >>> t = synthetic_triple(RationalFunction(2 * y, y * y - 1), RationalFunction(2 * y, y * y - 1))
        >>> t.symmetric
        True
    """
    return AdmittanceTriple(mu1, mu1 if mu2 is None else mu2, nu, name, 'synthetic')


@dataclass(frozen=True)
class AdmittancePoint:
    """
    The triple evaluated at one y.

    When a component has a pole at y its value is None, ``finite`` is False
    and ``laurent`` holds expansions of all three components.
    """

    y: object
    mu1: object
    mu2: object
    nu: object
    finite: bool = True
    exact: bool = False
    laurent: Optional[Dict[str, LaurentExpansion]] = field(default=None, compare=False)
    source: Optional[str] = field(default=None, compare=False)

    @property
    def mu(self):
        """Common mu for symmetric points (mean of mu1 and mu2)."""
        return (self.mu1 + self.mu2) / 2

    def to_json(self, nu_sign: int = 1) -> dict:
        doc = {
            "schema": SCHEMA,
            "y": format_value(self.y),
            "mu1": format_value(self.mu1),
            "mu2": format_value(self.mu2),
            "nu": format_value(None if self.nu is None else nu_sign * self.nu),
            "convention": "path-sum" if nu_sign == 1 else "printed",
            "finite": self.finite,
            "exact": self.exact,
        }
        if self.laurent is not None:
            doc["laurent"] = {}
            for name, expansion in self.laurent.items():
                sign = nu_sign if name == 'nu' else 1
                doc["laurent"][name] = {
                    "order": expansion.to_json()["order"],
                    "coefficients": {str(n): format_value(sign * c)
                                     for n, c in sorted(expansion.coefficients.items())},
                }
        return doc


def _exact_values(t: AdmittanceTriple, y) -> Tuple[dict, dict]:
    values, poles = {}, {}
    for name in COMPONENTS:
        f = t.component(name)
        if f.has_pole_at(y):
            poles[name] = True
            values[name] = None
        else:
            values[name] = f(y)
    return values, poles


def _float_values(t: AdmittanceTriple, y: float) -> Tuple[dict, dict]:
    values, poles = {}, {}
    for name in COMPONENTS:
        f = t.component(name)
        if f.has_pole_at(y, POLE_TOL):
            poles[name] = True
            values[name] = None
        else:
            values[name] = float(f(y))
    return values, poles


def evaluate(t: AdmittanceTriple, y, tol: float = None) -> AdmittancePoint:
    """
    Evaluate the triple at y, exactly when y is exact and in-field.

    Args:
        t: Admittance triple
        y: Exact scalar or float
        tol: Zero threshold for float Laurent coefficients (default DEFAULT_TOL)

    Returns:
        AdmittancePoint, with Laurent data attached at poles
    """
    exact = is_exact(y)
    if exact:
        try:
            values, poles = _exact_values(t, y)
        except MixedRadicalError:
            logger.warning("Mixed radical fields at y=%s; falling back to floats", y)
            exact = False
            y = to_float(y)
    if not exact:
        y = float(y)
        values, poles = _float_values(t, y)
    laurent = None
    if poles:
        laurent_tol = None if exact else (tol or DEFAULT_TOL)
        laurent = {name: laurent_expand(t.component(name), y, 1, laurent_tol)
                   for name in COMPONENTS}
    return AdmittancePoint(y, values['mu1'], values['mu2'], values['nu'],
                           finite=not poles, exact=exact, laurent=laurent, source=t.source)


def derivatives_at(t: AdmittanceTriple, y) -> Tuple:
    """(mu1', mu2', nu') at y, exact when y is exact."""
    d = t.derivative()
    point = evaluate(d, y)
    if not point.finite:
        raise ZeroDivisionError(f"Admittance derivative has a pole at y={y}")
    return point.mu1, point.mu2, point.nu
