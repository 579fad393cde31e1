"""
Univariate polynomials in y with exact coefficients, backed by ``sympy.Poly``.

Coefficients are exposed in ascending degree as our exact scalars (Fraction,
QuadraticScalar, GaussianRational). All arithmetic, division and gcds are
sympy's over the smallest algebraic field holding the coefficients; we only
refuse to mix two different radicals.
"""

from fractions import Fraction
from itertools import chain
from typing import Iterable, Sequence, Tuple

import numpy as np
import sympy

from src.graphs.scalar import (
    GaussianRational,
    from_sympy,
    radicand,
    scalar_from_json,
    scalar_to_json,
    simplify,
    to_sympy,
)
from src.utils.errors import MixedRadicalError


Y = sympy.Symbol('y')


def _is_zero(c, tol=None) -> bool:
    if tol is None:
        return c == 0
    return abs(complex(c)) <= tol


def _check_field(*groups) -> None:
    """Raise MixedRadicalError unless all values share one extension of Q."""
    found = None
    for value in chain(*groups):
        key = -1 if isinstance(value, GaussianRational) and not value.is_real else radicand(value)
        if key == 1:
            continue
        if found not in (None, key):
            raise MixedRadicalError(f"Coefficients mix two extensions of Q ({found} and {key})")
        found = key


class Polynomial:
    """
    Immutable polynomial sum_i coeffs[i] * y**i.

    Example:
        >>> p = Polynomial([-1, 0, 1])      # y^2 - 1
        >>> p(Fraction(3))
        Fraction(8, 1)
        >>> p.degree
        2
    """

    __slots__ = ('_poly', '_coeffs')

    def __init__(self, coeffs: Iterable = ()):
        cs = [simplify(c) for c in coeffs]
        _check_field(cs)
        expr = sympy.Add(*(to_sympy(c) * Y ** i for i, c in enumerate(cs)))
        self._set(sympy.Poly(expr, Y, extension=True))

    def _set(self, poly: sympy.Poly) -> None:
        self._poly = poly
        self._coeffs: Tuple = () if poly.is_zero else \
            tuple(from_sympy(c) for c in reversed(poly.all_coeffs()))

    @classmethod
    def _wrap(cls, poly: sympy.Poly) -> 'Polynomial':
        obj = cls.__new__(cls)
        obj._set(poly)
        return obj

    @classmethod
    def from_sympy(cls, expr) -> 'Polynomial':
        """Polynomial from a sympy expression in ``Y``."""
        return cls._wrap(sympy.Poly(expr, Y, extension=True))

    @classmethod
    def constant(cls, c) -> 'Polynomial':
        return cls([c])

    @classmethod
    def y(cls) -> 'Polynomial':
        return cls([Fraction(0), Fraction(1)])

    @classmethod
    def one(cls) -> 'Polynomial':
        return cls([Fraction(1)])

    @property
    def coeffs(self) -> Tuple:
        return self._coeffs

    @property
    def sympy_poly(self) -> sympy.Poly:
        return self._poly

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def leading(self):
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def __getitem__(self, i: int):
        return self._coeffs[i] if 0 <= i < len(self._coeffs) else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f"Polynomial({list(self._coeffs)!r})"

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        for i, c in enumerate(self._coeffs):
            if _is_zero(c):
                continue
            terms.append(f"({c})" + ("" if i == 0 else "*y" if i == 1 else f"*y^{i}"))
        return " + ".join(reversed(terms))

    def _lift(self, other) -> 'Polynomial':
        o = other if isinstance(other, Polynomial) else Polynomial([other])
        _check_field(self._coeffs, o._coeffs)
        return o

    def __add__(self, other):
        return self._wrap(self._poly + self._lift(other)._poly)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self._poly)

    def __sub__(self, other):
        return self._wrap(self._poly - self._lift(other)._poly)

    def __rsub__(self, other):
        return self._wrap(self._lift(other)._poly - self._poly)

    def __mul__(self, other):
        return self._wrap(self._poly * self._lift(other)._poly)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        return self._wrap(self._poly ** exponent)

    def scale(self, c) -> 'Polynomial':
        return self * c

    def divmod(self, other: 'Polynomial') -> Tuple['Polynomial', 'Polynomial']:
        """Euclidean division over the coefficient field."""
        o = self._lift(other)
        if o.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q, r = self._poly.div(o._poly)
        return self._wrap(q), self._wrap(r)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> 'Polynomial':
        if self.is_zero:
            return self
        return self._wrap(self._poly.monic())

    def __call__(self, x):
        """Exact evaluation for exact x, numpy for float/complex x."""
        if isinstance(x, complex):
            return self.evaluate_complex(x)
        if isinstance(x, float):
            return self.evaluate_complex(x).real
        _check_field(self._coeffs, [simplify(x)])
        return from_sympy(self._poly.as_expr().subs(Y, to_sympy(x)))

    evaluate = __call__

    def evaluate_complex(self, z: complex) -> complex:
        """Float evaluation through numpy."""
        if self.is_zero:
            return 0j
        return complex(np.polynomial.polynomial.polyval(
            z, np.array([complex(c) for c in self._coeffs])))

    def derivative(self) -> 'Polynomial':
        return self._wrap(self._poly.diff(Y))

    def taylor_shift(self, y0) -> 'Polynomial':
        """Coefficients of p(t + y0) in t, for exact y0."""
        _check_field(self._coeffs, [simplify(y0)])
        return self.from_sympy(self._poly.as_expr().subs(Y, Y + to_sympy(y0)))

    def taylor_coefficients(self, y0) -> np.ndarray:
        """Float coefficients of p(t + y0) in t, ascending."""
        if self.is_zero:
            return np.zeros(1, dtype=complex)
        p = np.polynomial.Polynomial([complex(c) for c in self._coeffs])
        return p(np.polynomial.Polynomial([complex(y0), 1])).coef

    def multiplicity_at(self, y0, tol=None) -> int:
        """Order of vanishing at y0 (0 if p(y0) != 0)."""
        if self.is_zero:
            raise ValueError("zero polynomial vanishes to infinite order")
        if tol is None:
            shifted = self.taylor_shift(y0).coeffs
        else:
            shifted = self.taylor_coefficients(y0)
        for i, c in enumerate(shifted):
            if not _is_zero(c, tol):
                return i
        return len(shifted)

    def to_json(self) -> list:
        return [scalar_to_json(c) for c in self._coeffs]

    @classmethod
    def from_json(cls, items: Sequence) -> 'Polynomial':
        return cls(scalar_from_json(c) for c in items)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """
    Monic greatest common divisor (``sympy.Poly.gcd``).

    gcd(0, 0) is the zero polynomial.
    """
    if a.is_zero and b.is_zero:
        return Polynomial()
    b = a._lift(b)
    return Polynomial._wrap(a.sympy_poly.gcd(b.sympy_poly)).monic()
