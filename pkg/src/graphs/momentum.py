"""
Lead momentum k in (-pi, 0) with its derived quantities.
"""

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from src.graphs.scalar import QuadraticScalar, Scalar, simplify
from src.utils.config import MOMENTUM_GUARD, MOMENTUM_LITERALS
from src.utils.errors import GraphParseError


@dataclass(frozen=True)
class Momentum:
    """
    Operating momentum of the scattering problem.

    The exact spectral point ``exact_y = 2cos(k)`` is attached when k is one
    of the named operating points (see ``MOMENTUM_LITERALS``) or was built
    from an exact y.

    Example:
        >>> k = Momentum.from_literal('-pi/4')
        >>> k.exact_y
        QuadraticScalar(0, 1, 2)
        >>> round(k.epsilon, 12)
        1.414213562373
    """

    k: float
    exact_y: Optional[Scalar] = None
    label: Optional[str] = None

    def __post_init__(self):
        k = float(self.k)
        object.__setattr__(self, 'k', k)
        if not (-math.pi + MOMENTUM_GUARD < k < -MOMENTUM_GUARD):
            raise ValueError(
                f"Momentum k={k} outside (-pi, 0) with guard band {MOMENTUM_GUARD}")
        if self.exact_y is not None:
            y = simplify(self.exact_y)
            object.__setattr__(self, 'exact_y', y)
            if abs(float(y) - 2 * math.cos(k)) > 1e-12:
                raise ValueError(f"exact_y={y} does not match 2cos({k})")

    @classmethod
    def from_literal(cls, text: str) -> 'Momentum':
        """Build one of the named operating points, e.g. ``'-pi/4'``."""
        key = text.strip().replace(' ', '').replace('π', 'pi')
        if key not in MOMENTUM_LITERALS:
            raise GraphParseError(f"Unknown momentum literal: {text!r}")
        a, b, d = MOMENTUM_LITERALS[key]
        y = QuadraticScalar(a, b, d) if b != 0 else Fraction(a)
        return cls(-math.acos(float(y) / 2), exact_y=y, label=key)

    @classmethod
    def from_y(cls, y: Scalar) -> 'Momentum':
        """Momentum in (-pi, 0) with 2cos(k) equal to the exact value y."""
        y = simplify(y)
        return cls(-math.acos(float(y) / 2), exact_y=y)

    @property
    def z(self) -> complex:
        return cmath.exp(1j * self.k)

    @property
    def epsilon(self) -> float:
        return 2 * math.cos(self.k)

    @property
    def y(self):
        """Exact y when available, otherwise the float 2cos(k)."""
        return self.exact_y if self.exact_y is not None else self.epsilon

    @property
    def is_exact(self) -> bool:
        return self.exact_y is not None

    def shifted(self, dk: float) -> 'Momentum':
        """Float momentum k + dk (exactness is dropped)."""
        return Momentum(self.k + dk)

    def __str__(self):
        return self.label or f"{self.k!r}"


_FLOAT_RE = re.compile(r'^\s*[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\s*$')


def parse_momentum(text: str) -> Momentum:
    """
    Parse a CLI momentum: a named literal like ``-pi/4`` or radians.

    Raises:
        GraphParseError: If neither form matches
    """
    key = text.strip().replace(' ', '')
    if key in MOMENTUM_LITERALS:
        return Momentum.from_literal(key)
    if not _FLOAT_RE.match(key):
        raise GraphParseError(f"Bad momentum: {text!r}")
    try:
        return Momentum(float(key))
    except ValueError as e:
        raise GraphParseError(str(e)) from e
