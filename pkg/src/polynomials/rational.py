"""
Reduced rational functions of y and their Laurent expansions.

Reduction uses ``sympy.Poly.cancel``; exact Laurent coefficients come from
``sympy.series``.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict

import numpy as np
import sympy

from src.graphs.scalar import Scalar, from_sympy, scalar_to_json, to_sympy
from src.polynomials.polynomial import Y, Polynomial, _is_zero


class PoleError(ZeroDivisionError):
    """Evaluation at a root of the reduced denominator."""


# order of the zero function
ZERO_ORDER = math.inf


class RationalFunction:
    """
    num/den kept in lowest terms with a monic denominator.

    Reduction is eager, so two equal functions compare equal structurally.

    Example:
        >>> y = Polynomial.y()
        >>> f = RationalFunction(Polynomial.one(), y) + RationalFunction(Polynomial.one(), y)
        >>> f.num, f.den
        (Polynomial([Fraction(2, 1)]), Polynomial([Fraction(0, 1), Fraction(1, 1)]))
    """

    __slots__ = ('num', 'den')

    def __init__(self, num: Polynomial, den: Polynomial = None):
        if den is None:
            den = Polynomial.one()
        if not isinstance(num, Polynomial):
            num = Polynomial([num])
        if not isinstance(den, Polynomial):
            den = Polynomial([den])
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            num, den = Polynomial(), Polynomial.one()
        else:
            den = num._lift(den)
            p, q = num.sympy_poly.cancel(den.sympy_poly, include=True)
            num, den = Polynomial._wrap(p), Polynomial._wrap(q)
            num, den = num.scale(Fraction(1) / den.leading), den.monic()
        self.num = num
        self.den = den

    @property
    def reduced(self) -> bool:
        return True

    @classmethod
    def from_poly(cls, p: Polynomial) -> 'RationalFunction':
        return cls(p, Polynomial.one())

    @classmethod
    def constant(cls, c) -> 'RationalFunction':
        return cls(Polynomial([c]))

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def _lift(self, other) -> 'RationalFunction':
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        return RationalFunction.constant(other)

    def __add__(self, other):
        o = self._lift(other)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, exponent: int):
        return RationalFunction(self.num ** exponent, self.den ** exponent)

    def __eq__(self, other):
        o = self._lift(other)
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        return f"({self.num}) / ({self.den})"

    def has_pole_at(self, y0, tol=None) -> bool:
        return _is_zero(self.den(y0), tol)

    def __call__(self, y0):
        """
        Evaluate at y0.

        Raises:
            PoleError: If y0 is a root of the reduced denominator
        """
        d = self.den(y0)
        if _is_zero(d):
            raise PoleError(f"pole at y = {y0}")
        return self.num(y0) / d

    evaluate = __call__

    def derivative(self) -> 'RationalFunction':
        """Quotient rule, reduced."""
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def laurent(self, y0, max_order: int = 1, tol=None) -> 'LaurentExpansion':
        return laurent_expand(self, y0, max_order, tol)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, doc: dict) -> 'RationalFunction':
        return cls(Polynomial.from_json(doc["num"]), Polynomial.from_json(doc["den"]))


def rf_arith(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    """Apply ``op`` in {'+', '-', '*', '/'}."""
    if op == '+':
        return a + b
    if op == '-':
        return a - b
    if op in ('*', 'x', '×'):
        return a * b
    if op in ('/', '÷'):
        return a / b
    raise ValueError(f"Unknown operator: {op!r}")


def rf_derivative(f: RationalFunction) -> RationalFunction:
    return f.derivative()


@dataclass(frozen=True)
class LaurentExpansion:
    """
    Coefficients of f(y) = sum_n c_n (y - y0)^n from ``order`` upward.

    ``order`` is ``ZERO_ORDER`` (infinity) for the zero function.
    """

    point: Scalar
    order: float
    coefficients: Dict[int, Scalar] = field(default_factory=dict)
    max_order: int = 1

    def coefficient(self, n: int):
        """c_n; zero below the leading order."""
        if n < self.order:
            return Fraction(0)
        if n > self.max_order:
            raise ValueError(f"Coefficient {n} beyond computed max_order {self.max_order}")
        return self.coefficients.get(n, Fraction(0))

    @property
    def has_pole(self) -> bool:
        return self.order < 0

    @property
    def residue(self):
        return self.coefficient(-1)

    def to_json(self) -> dict:
        def fmt(c):
            try:
                return scalar_to_json(c)
            except TypeError:
                return complex(c).real
        return {
            "order": None if self.order == ZERO_ORDER else int(self.order),
            "coefficients": {str(n): fmt(c) for n, c in sorted(self.coefficients.items())},
        }


def laurent_expand(f: RationalFunction, y0, max_order: int = 1, tol=None) -> LaurentExpansion:
    """
    Laurent coefficients of ``f`` at ``y0`` up to ``max_order``.

    Exact points use ``sympy.series`` of f(t + y0) around t = 0. Float points
    Taylor-shift both polynomials with numpy and solve the series quotient;
    ``tol`` then switches the zero tests to ``abs(c) <= tol``.

    Example:
        >>> f = RationalFunction(Polynomial([-1, 0, 1]), Polynomial.y())   # (y^2-1)/y
        >>> e = laurent_expand(f, Fraction(0), 1)
        >>> e.order, e.coefficient(-1), e.coefficient(1)
        (-1, Fraction(-1, 1), Fraction(1, 1))
    """
    if f.is_zero:
        return LaurentExpansion(y0, ZERO_ORDER, {}, max_order)
    if isinstance(y0, (float, complex)):
        return _laurent_float(f, y0, max_order, tol)
    order = f.num.multiplicity_at(y0) - f.den.multiplicity_at(y0)
    terms = max_order - order + 1
    coefficients: Dict[int, Scalar] = {}
    if terms > 0:
        t = sympy.Symbol('t')
        shifted = (f.num.sympy_poly.as_expr() / f.den.sympy_poly.as_expr()).subs(Y, t + to_sympy(y0))
        series = sympy.expand(sympy.series(shifted * t ** (-order), t, 0, terms).removeO())
        for j in range(terms):
            coefficients[order + j] = from_sympy(series.coeff(t, j))
    return LaurentExpansion(y0, order, coefficients, max_order)


def _laurent_float(f: RationalFunction, y0, max_order: int, tol) -> LaurentExpansion:
    n = f.num.taylor_coefficients(y0)
    d = f.den.taylor_coefficients(y0)
    a = next((i for i, c in enumerate(n) if not _is_zero(c, tol)), None)
    if a is None:
        return LaurentExpansion(y0, ZERO_ORDER, {}, max_order)
    b = next(i for i, c in enumerate(d) if not _is_zero(c, tol))
    order = a - b
    terms = max(max_order - order + 1, 0)
    if terms == 0:
        return LaurentExpansion(y0, order, {}, max_order)
    num = np.zeros(terms, dtype=complex)
    top = n[a:a + terms]
    num[:len(top)] = top
    den = np.zeros(terms, dtype=complex)
    tail = d[b:b + terms]
    den[:len(tail)] = tail
    # lower-triangular Toeplitz system of the series quotient
    index = np.subtract.outer(np.arange(terms), np.arange(terms))
    system = np.where(index >= 0, den[np.clip(index, 0, None)], 0)
    series = np.linalg.solve(system, num)
    coefficients = {order + j: complex(c) for j, c in enumerate(series)}
    return LaurentExpansion(y0, order, coefficients, max_order)
