"""
Composition laws for admittance triples.

Parallel: the components add. Series (terminal 2 of the first graph glued
to terminal 1 of the second): eliminating the glued vertex, whose
self-energy is y - mu1(G1) - mu2(G2), gives

    mu1(G1G2) = mu1(G2) + nu(G2)^2 / (y - mu1(G1) - mu2(G2))
    mu2(G1G2) = mu2(G1) + nu(G1)^2 / (y - mu1(G1) - mu2(G2))
    nu(G1G2)  = nu(G1) nu(G2)     / (y - mu1(G1) - mu2(G2))
"""

from functools import reduce
from typing import Sequence

from src.admittance.triple import AdmittanceTriple
from src.polynomials.polynomial import Polynomial
from src.polynomials.rational import RationalFunction
from src.utils.errors import DegenerateError, ModeError


def parallel_add(ts: Sequence[AdmittanceTriple]) -> AdmittanceTriple:
    """
    Component-wise sum of triples of graphs sharing both terminals.

    Raises:
        ModeError: Empty input
    """
    if not ts:
        raise ModeError("parallel_add needs at least one triple")

    def add(a: AdmittanceTriple, b: AdmittanceTriple) -> AdmittanceTriple:
        return AdmittanceTriple(a.mu1 + b.mu1, a.mu2 + b.mu2, a.nu + b.nu, None,
                                'synthetic' if 'synthetic' in (a.origin, b.origin) else 'from_graph')

    total = reduce(add, ts)
    names = [t.source or '?' for t in ts]
    return AdmittanceTriple(total.mu1, total.mu2, total.nu, ' || '.join(names), total.origin)


def scale(t: AdmittanceTriple, count: int) -> AdmittanceTriple:
    """``count`` copies of one block in parallel."""
    return AdmittanceTriple(count * t.mu1, count * t.mu2, count * t.nu,
                            f"{count}x{t.source}", t.origin)


def series_combine(t1: AdmittanceTriple, t2: AdmittanceTriple) -> AdmittanceTriple:
    """
    Triple of t1 followed by t2 in series.

    Raises:
        DegenerateError: y - mu1(G1) - mu2(G2) is identically zero

    Example:
        >>> one = RationalFunction.constant(1)
        >>> zero = RationalFunction.constant(0)
        >>> edge = AdmittanceTriple(zero, zero, one)
        >>> series_combine(edge, edge).nu == RationalFunction(Polynomial.one(), Polynomial.y())
        True
    """
    glue = RationalFunction.from_poly(Polynomial.y()) - t1.mu1 - t2.mu2
    if glue.is_zero:
        raise DegenerateError("Series glue denominator y - mu1(G1) - mu2(G2) is identically zero")
    mu1 = t2.mu1 + t2.nu * t2.nu / glue
    mu2 = t1.mu2 + t1.nu * t1.nu / glue
    nu = t1.nu * t2.nu / glue
    origin = 'synthetic' if 'synthetic' in (t1.origin, t2.origin) else 'from_graph'
    return AdmittanceTriple(mu1, mu2, nu, f"{t1.source or '?'}-{t2.source or '?'}", origin)


def charpoly_ratio(t: AdmittanceTriple) -> RationalFunction:
    """(y - mu1)(y - mu2) - nu^2, which equals phi_G / phi_{G-1-2} for graph triples."""
    y = RationalFunction.from_poly(Polynomial.y())
    return (y - t.mu1) * (y - t.mu2) - t.nu * t.nu
