"""
Exact scalars: rationals, Gaussian rationals and single-radical quadratic numbers.

Rationals are plain ``fractions.Fraction``. The two extension types below are
thin value types over sympy expressions: arithmetic is carried out by sympy
(``Rational``, ``sqrt``, ``I``, ``radsimp``) and the result is read back into
``Fraction``, ``QuadraticScalar`` or ``GaussianRational`` by ``from_sympy``.
"""

import math
import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import sympy
from sympy import I, Pow, Rational, S, factorint

from src.utils.errors import GraphParseError, MixedRadicalError


_RATIONAL_RE = re.compile(r'^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$')


def parse_rational(text: str) -> Fraction:
    """
    Parse an exact rational string such as ``"3"``, ``"-7/4"``.

    Args:
        text: String of the form ``[sign]p`` or ``[sign]p/q``

    Returns:
        Fraction in lowest terms

    Raises:
        GraphParseError: If the string is not a valid rational or q = 0
    """
    if not isinstance(text, str):
        raise GraphParseError(f"Expected a rational string, got {text!r}")
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise GraphParseError(f"Bad rational string: {text!r}")
    p, q = match.group(1), match.group(2)
    if q is not None and int(q) == 0:
        raise GraphParseError(f"Zero denominator in rational string: {text!r}")
    return Fraction(int(p), int(q) if q is not None else 1)


def format_rational(value: Fraction) -> str:
    """Lowest-terms string, ``"p"`` or ``"p/q"``."""
    return str(Fraction(value))


def is_square_free(d: int) -> bool:
    """True for d >= 2 with no repeated prime factor."""
    if d < 2:
        return False
    return all(exponent == 1 for exponent in factorint(d).values())


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, sympy.Rational):
        return Fraction(int(x.p), int(x.q))
    raise TypeError(f"Not an exact rational: {x!r}")


def _rational(x: Fraction) -> sympy.Rational:
    return Rational(x.numerator, x.denominator)


def to_sympy(x) -> sympy.Expr:
    """
    Exact scalar as a sympy expression.

    Raises:
        TypeError: For floats and other inexact values
    """
    if isinstance(x, sympy.Basic):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return _rational(Fraction(x))
    if isinstance(x, (GaussianRational, QuadraticScalar)):
        return x._sympy_()
    raise TypeError(f"Not an exact scalar: {x!r}")


def from_sympy(expr):
    """
    Read a sympy number back into Fraction, QuadraticScalar or GaussianRational.

    Denominators are rationalized first, so ``1/(1 + sqrt(2))`` comes back as
    ``-1 + sqrt(2)``.

    Raises:
        MixedRadicalError: If more than one square root survives
        TypeError: For anything that is not in Q, Q(i) or a single Q(sqrt d)
    """
    expr = sympy.sympify(expr)
    if expr.is_Rational:
        return _as_fraction(expr)
    if any(p.exp.is_negative for p in expr.atoms(Pow)):
        expr = sympy.radsimp(expr)
    expr = sympy.expand(expr)
    if expr.is_Rational:
        return _as_fraction(expr)
    if expr.has(I):
        re_part, im_part = expr.as_real_imag()
        if not (re_part.is_Rational and im_part.is_Rational):
            raise TypeError(f"Not a Gaussian rational: {expr}")
        return GaussianRational(_as_fraction(re_part), _as_fraction(im_part))
    roots = {p for p in expr.atoms(Pow) if p.exp == S.Half}
    if len(roots) > 1:
        raise MixedRadicalError(f"Several radicals in {expr}")
    if not roots:
        raise TypeError(f"Not an exact scalar: {expr}")
    root = roots.pop()
    b = expr.coeff(root)
    a = sympy.expand(expr - b * root)
    if not (a.is_Rational and b.is_Rational and root.base.is_Integer):
        raise TypeError(f"Not a quadratic scalar: {expr}")
    return simplify(QuadraticScalar(_as_fraction(a), _as_fraction(b), int(root.base)))


def _compute(op, x, y):
    if op is operator.truediv and y == 0:
        raise ZeroDivisionError(f"division of {x!r} by zero")
    return from_sympy(op(to_sympy(x), to_sympy(y)))


@dataclass(frozen=True)
class GaussianRational:
    """
    Complex number re + i*im with rational parts.

    Used for the weights of Hermitian-mode graphs. Arithmetic between Gaussian
    rationals stays a GaussianRational even when the imaginary part vanishes.

    Example:
        >>> w = GaussianRational(Fraction(1, 2), Fraction(1))
        >>> (w * w.conjugate()).re
        Fraction(5, 4)
    """

    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, 're', _as_fraction(self.re))
        object.__setattr__(self, 'im', _as_fraction(self.im))

    def _sympy_(self):
        return _rational(self.re) + _rational(self.im) * I

    def conjugate(self) -> 'GaussianRational':
        return GaussianRational(self.re, -self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def _apply(self, op, x, y):
        if not isinstance(x, (int, Fraction, GaussianRational)) or \
                not isinstance(y, (int, Fraction, GaussianRational)):
            return NotImplemented
        result = _compute(op, x, y)
        if isinstance(result, Fraction):
            return GaussianRational(result, Fraction(0))
        return result

    def __add__(self, other):
        return self._apply(operator.add, self, other)

    def __radd__(self, other):
        return self._apply(operator.add, other, self)

    def __sub__(self, other):
        return self._apply(operator.sub, self, other)

    def __rsub__(self, other):
        return self._apply(operator.sub, other, self)

    def __mul__(self, other):
        return self._apply(operator.mul, self, other)

    def __rmul__(self, other):
        return self._apply(operator.mul, other, self)

    def __truediv__(self, other):
        return self._apply(operator.truediv, self, other)

    def __rtruediv__(self, other):
        return self._apply(operator.truediv, other, self)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


@dataclass(frozen=True)
class QuadraticScalar:
    """
    Element a + b*sqrt(d) of the quadratic field Q(sqrt(d)).

    d must be square-free and at least 2. Arithmetic between two quadratic
    scalars requires the same d; mixing radicals raises MixedRadicalError.
    Results with a vanishing radical part collapse to ``Fraction``.

    Example:
        >>> r2 = QuadraticScalar(Fraction(0), Fraction(1), 2)
        >>> r2 * r2
        Fraction(2, 1)
    """

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, 'a', _as_fraction(self.a))
        object.__setattr__(self, 'b', _as_fraction(self.b))
        if not is_square_free(self.d):
            raise ValueError(f"Radicand must be square-free and >= 2, got {self.d}")

    @staticmethod
    def sqrt(d: int) -> 'QuadraticScalar':
        """The generator sqrt(d)."""
        return QuadraticScalar(Fraction(0), Fraction(1), d)

    def _sympy_(self):
        return _rational(self.a) + _rational(self.b) * sympy.sqrt(self.d)

    def _apply(self, op, x, y):
        for value in (x, y):
            if isinstance(value, QuadraticScalar):
                if value.d != self.d:
                    raise MixedRadicalError(
                        f"Cannot combine sqrt({self.d}) and sqrt({value.d}) exactly")
            elif not isinstance(value, (int, Fraction)) or isinstance(value, bool):
                return NotImplemented
        return _compute(op, x, y)

    def conjugate(self):
        """Galois conjugate a - b*sqrt(d)."""
        return simplify(QuadraticScalar(self.a, -self.b, self.d))

    def norm(self) -> Fraction:
        return from_sympy(self._sympy_() * to_sympy(self.conjugate()))

    def __add__(self, other):
        return self._apply(operator.add, self, other)

    def __radd__(self, other):
        return self._apply(operator.add, other, self)

    def __sub__(self, other):
        return self._apply(operator.sub, self, other)

    def __rsub__(self, other):
        return self._apply(operator.sub, other, self)

    def __mul__(self, other):
        return self._apply(operator.mul, self, other)

    def __rmul__(self, other):
        return self._apply(operator.mul, other, self)

    def __truediv__(self, other):
        return self._apply(operator.truediv, self, other)

    def __rtruediv__(self, other):
        return self._apply(operator.truediv, other, self)

    def __neg__(self):
        return simplify(QuadraticScalar(-self.a, -self.b, self.d))

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        return from_sympy(self._sympy_() ** exponent)

    def __eq__(self, other):
        if isinstance(other, QuadraticScalar):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d) or \
                (self.b == 0 and other.b == 0 and self.a == other.a)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash((self.a, self.b, self.d))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __complex__(self):
        return complex(float(self))

    def __repr__(self):
        return f"QuadraticScalar({self.a}, {self.b}, {self.d})"

    def __str__(self):
        return f"{self.a} + {self.b}*sqrt({self.d})"


Scalar = Union[Fraction, GaussianRational, QuadraticScalar]

def simplify(x):
    """Collapse extension elements with a zero extension part to Fraction."""
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, GaussianRational) and x.im == 0:
        return x.re
    if isinstance(x, QuadraticScalar) and x.b == 0:
        return x.a
    return x


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational, QuadraticScalar)) \
        and not isinstance(x, bool)


def radicand(x) -> int:
    """Radicand of a quadratic scalar, 1 for rationals."""
    return x.d if isinstance(x, QuadraticScalar) else 1


def common_radicand(values) -> int:
    """
    The single radicand shared by a collection of exact real scalars.

    Raises:
        MixedRadicalError: If two different radicands occur
    """
    found = 1
    for value in values:
        d = radicand(value)
        if d != 1:
            if found not in (1, d):
                raise MixedRadicalError(f"Values live in Q(sqrt({found})) and Q(sqrt({d}))")
            found = d
    return found


def to_complex(x) -> complex:
    return complex(x)


def to_float(x) -> float:
    if isinstance(x, GaussianRational):
        if x.im != 0:
            raise ValueError(f"Not a real scalar: {x!r}")
        return float(x.re)
    return float(x)


def scalar_to_json(x):
    """Serialize an exact scalar in the graph JSON weight format."""
    if isinstance(x, GaussianRational):
        return {"re": format_rational(x.re), "im": format_rational(x.im)}
    if isinstance(x, QuadraticScalar):
        c = math.lcm(x.a.denominator, x.b.denominator)
        return {"a": str(int(x.a * c)), "b": str(int(x.b * c)), "c": str(c), "d": x.d}
    return format_rational(_as_fraction(x))


def scalar_from_json(obj):
    """
    Parse a weight in any of the three JSON forms.

    Args:
        obj: ``"p/q"`` string (or int), ``{"re", "im"}`` or ``{"a", "b", "c", "d"}``

    Returns:
        Fraction, GaussianRational or QuadraticScalar

    Raises:
        GraphParseError: For malformed input
    """
    if isinstance(obj, bool):
        raise GraphParseError(f"Invalid scalar: {obj!r}")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        return parse_rational(obj)
    if isinstance(obj, dict):
        if set(obj) == {"re", "im"}:
            return GaussianRational(parse_rational(obj["re"]), parse_rational(obj["im"]))
        if set(obj) == {"a", "b", "c", "d"}:
            c = parse_rational(obj["c"])
            if c == 0:
                raise GraphParseError("Quadratic scalar with c = 0")
            d = obj["d"]
            if not isinstance(d, int) or isinstance(d, bool) or not is_square_free(d):
                raise GraphParseError(f"Radicand must be a square-free integer >= 2, got {d!r}")
            return QuadraticScalar(parse_rational(obj["a"]) / c, parse_rational(obj["b"]) / c, d)
    raise GraphParseError(f"Invalid scalar: {obj!r}")
