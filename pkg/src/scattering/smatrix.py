"""
Scattering matrices, lead phase shifts and the off-diagonal sign calibration record.
"""

from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

from src.graphs.momentum import Momentum
from src.utils.config import SCHEMA


@dataclass(frozen=True)
class SignCalibration:
    """
    Global sign applied to the off-diagonal closed forms.

    ``sigma = +1`` reproduces the printed formulas; the calibrated value
    comes from ``calibrate_sign``.
    """

    sigma: int
    calibrated_against: str
    oracle_value: Optional[complex] = None
    closed_raw_value: Optional[complex] = None

    def __post_init__(self):
        if self.sigma not in (1, -1):
            raise ValueError(f"sigma must be +1 or -1, got {self.sigma}")

    def to_json(self) -> dict:
        def cx(value):
            return None if value is None else {"re": value.real, "im": value.imag}
        return {
            "schema": SCHEMA,
            "sigma": self.sigma,
            "calibrated_against": self.calibrated_against,
            "oracle_value": cx(self.oracle_value),
            "closed_raw_value": cx(self.closed_raw_value),
        }


# the printed closed forms, before calibration
RAW = SignCalibration(1, "printed formulas (uncalibrated)")


@dataclass(frozen=True, eq=False)
class SMatrix:
    """
    N x N scattering matrix at one momentum.

    ``method`` is one of ``oracle``, ``closed`` or ``admittance``. ``flags``
    records numerical fallbacks (``extended_leads``, ``perturbed``,
    ``ill_conditioned``, ``exact``...). For Hermitian-mode closed forms the
    off-diagonal entries are NaN and only ``transmission_probability`` is set.
    """

    k: Momentum
    entries: np.ndarray
    method: str
    graph_hash: Optional[str] = None
    flags: Tuple[str, ...] = ()
    sigma: Optional[int] = None
    transmission_probability: Optional[float] = None
    condition: Optional[float] = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, index):
        return self.entries[index]

    @property
    def unitarity_defect(self) -> float:
        return check_unitarity(self)

    def to_json(self) -> dict:
        doc = {
            "schema": SCHEMA,
            "k": self.k.k,
            "method": self.method,
            "entries": [[{"re": float(x.real), "im": float(x.imag)} for x in row]
                        for row in self.entries],
            "unitarity_defect": None if np.isnan(self.entries).any() else self.unitarity_defect,
            "graph_hash": self.graph_hash,
            "flags": list(self.flags),
        }
        if self.k.label:
            doc["k_label"] = self.k.label
        if self.sigma is not None:
            doc["sigma"] = self.sigma
        if self.transmission_probability is not None:
            doc["transmission_probability"] = self.transmission_probability
        return doc


def check_unitarity(s) -> float:
    """
    Max-norm defect ||S^dagger S - I||_max.

    Accepts an SMatrix or a bare square array.

    Example:
        >>> round(check_unitarity(1.1 * np.eye(2)), 12)
        0.21
    """
    m = s.entries if isinstance(s, SMatrix) else np.asarray(s, dtype=complex)
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


def symmetry_defect(s) -> float:
    """||S - S^T||_max."""
    m = s.entries if isinstance(s, SMatrix) else np.asarray(s, dtype=complex)
    return float(np.max(np.abs(m - m.T)))


def shift_phase(s: SMatrix, lead: int, power: int = 1) -> SMatrix:
    """
    Move the phase reference of one lead by ``power`` sites.

    Row and column ``lead`` are multiplied by z**power, so the diagonal
    entry picks up z**(2*power). ``power=-1`` undoes a shift.

    Raises:
        IndexError: If ``lead`` is not a valid lead index
    """
    if not 0 <= lead < s.size:
        raise IndexError(f"Lead {lead} out of range for a {s.size}x{s.size} S-matrix")
    factor = s.k.z ** power
    entries = s.entries.copy()
    entries[lead, :] *= factor
    entries[:, lead] *= factor
    return replace(s, entries=entries)


def unshift_phase(s: SMatrix, lead: int) -> SMatrix:
    return shift_phase(s, lead, power=-1)


def max_difference(a: SMatrix, b: SMatrix, offdiagonal_sign: int = 1) -> float:
    """Largest entrywise difference, optionally flipping b's off-diagonal sign."""
    other = b.entries.copy()
    if offdiagonal_sign != 1:
        mask = ~np.eye(other.shape[0], dtype=bool)
        other[mask] *= offdiagonal_sign
    return float(np.max(np.abs(a.entries - other)))
