"""
Scattering matrices: the Schur-complement oracle, closed forms from
characteristic polynomials, lead phase shifts and sign calibration.
"""

from .calibration import calibrate_sign, get_calibration
from .closed_form import (
    CharpolyPTCheck,
    check_pt_charpoly,
    same_vertex_smatrix,
    smatrix_closed,
    smatrix_closed2,
    transmission_phase_charpoly,
    transmission_probability,
)
from .oracle import BlockDecomposition, smatrix_oracle
from .smatrix import (
    RAW,
    SignCalibration,
    SMatrix,
    check_unitarity,
    max_difference,
    shift_phase,
    symmetry_defect,
    unshift_phase,
)

__all__ = [
    'calibrate_sign', 'get_calibration',
    'CharpolyPTCheck', 'check_pt_charpoly', 'same_vertex_smatrix', 'smatrix_closed',
    'smatrix_closed2', 'transmission_phase_charpoly', 'transmission_probability',
    'BlockDecomposition', 'smatrix_oracle',
    'RAW', 'SignCalibration', 'SMatrix', 'check_unitarity', 'max_difference',
    'shift_phase', 'symmetry_defect', 'unshift_phase',
]
