"""
Configuration constants for the quantum-walk scattering toolkit.

This module contains the numerical tolerances, enumeration limits and
exact momentum literals shared by every subpackage, plus the CLI
configuration record.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Literal, Tuple


# Tolerances
DEFAULT_TOL: float = 1e-9          # float-path equality for mu, nu and residuals
ANGULAR_TOL: float = 1e-6          # target phase matching in the designer (rad)
MOMENTUM_GUARD: float = 1e-6       # k must stay this far inside (-pi, 0)
POLE_TOL: float = 1e-12            # |den(y)| below this is a pole on the float path

# Enumeration limits for the cross-check algorithms (simple paths, cycles)
ENUMERATION_VERTEX_LIMIT: int = 14

# Oracle linear algebra
CONDITION_WARNING: float = 1e12    # log a warning above this condition number
SINGULAR_CONDITION: float = 1e13   # treat the solve as singular above this
PERTURBATION_STEP: float = 1e-7    # k offset for the last-resort fallback
EXTRAPOLATION_DIVERGENCE: float = 1e-4
EXTENDED_DPS: int = 50             # mpmath decimal places for --precision extended

# Designer defaults
DEFAULT_MAX_TOTAL_BLOCKS: int = 16
DEFAULT_MAX_PER_BLOCK: int = 16
MAX_HALF_ENUMERATION: int = 2_000_000
CERTIFICATE_TOL: float = 1e-8     # accepted results need |S12| (or |S11|) >= 1 - this
SEARCH_CHUNK: int = 2048           # half-A rows joined per vectorized step

# Maps the stored (path-sum) nu onto the values printed in the worked
# example tables.
PRINTED_SIGN: int = -1

SCHEMA: str = "qws/1"

# Exact y = 2cos(k) for the named operating points, stored as
# (rational part, radical coefficient, radicand).
MOMENTUM_LITERALS: Dict[str, Tuple[Fraction, Fraction, int]] = {
    '-pi/6': (Fraction(0), Fraction(1), 3),      # y = sqrt(3)
    '-pi/4': (Fraction(0), Fraction(1), 2),      # y = sqrt(2)
    '-pi/3': (Fraction(1), Fraction(0), 1),      # y = 1
    '-pi/2': (Fraction(0), Fraction(0), 1),      # y = 0
    '-2pi/3': (Fraction(-1), Fraction(0), 1),    # y = -1
    '-3pi/4': (Fraction(0), Fraction(-1), 2),    # y = -sqrt(2)
    '-5pi/6': (Fraction(0), Fraction(-1), 3),    # y = -sqrt(3)
}

# CLI exit codes
EXIT_CODES: Dict[str, int] = {
    'ok': 0,
    'usage': 1,
    'parse': 2,
    'singular': 3,
    'resource': 4,
}


@dataclass(frozen=True)
class CliConfig:
    """
    Global options shared by every CLI subcommand.

    Example:
        >>> CliConfig(tol=1e-10).output
        'json'
    """

    precision: Literal['float64', 'extended'] = 'float64'
    tol: float = DEFAULT_TOL
    output: Literal['json', 'csv', 'human'] = 'json'
    sign_convention_display: Literal['path-sum', 'printed'] = 'path-sum'

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.precision not in ('float64', 'extended'):
            raise ValueError(f"Unknown precision: {self.precision}")
        if self.output not in ('json', 'csv', 'human'):
            raise ValueError(f"Unknown output format: {self.output}")
        if self.sign_convention_display not in ('path-sum', 'printed'):
            raise ValueError(f"Unknown sign convention: {self.sign_convention_display}")

    @property
    def nu_display_sign(self) -> int:
        """Factor applied to stored nu values before display."""
        return PRINTED_SIGN if self.sign_convention_display == 'printed' else 1
