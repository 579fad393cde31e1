"""
The mu1/mu2/nu layer: admittance triples, the S-matrix in mu/nu form,
perfect transmission and reflection tests, composition laws and the
effective length.
"""

from .composition import charpoly_ratio, parallel_add, scale, series_combine
from .conditions import (
    PARTIAL,
    PERFECT_REFLECTION,
    PERFECT_TRANSMISSION,
    PTResult,
    admittance_matrix,
    check_pr,
    check_pt,
    check_pt_pole,
    effective_length,
    effective_length_from_values,
    hyperbola_param,
    hyperbola_residual,
    momentum_of,
    parallel_effective_length,
    phase_from_point,
    smatrix_from_admittance,
    smatrix_from_y,
)
from .triple import (
    AdmittancePoint,
    AdmittanceTriple,
    admittance,
    derivatives_at,
    evaluate,
    synthetic_triple,
)

__all__ = [
    'charpoly_ratio', 'parallel_add', 'scale', 'series_combine',
    'PARTIAL', 'PERFECT_REFLECTION', 'PERFECT_TRANSMISSION', 'PTResult',
    'admittance_matrix', 'check_pr', 'check_pt', 'check_pt_pole', 'effective_length',
    'effective_length_from_values', 'hyperbola_param', 'hyperbola_residual', 'momentum_of',
    'parallel_effective_length', 'phase_from_point', 'smatrix_from_admittance', 'smatrix_from_y',
    'AdmittancePoint', 'AdmittanceTriple', 'admittance', 'derivatives_at', 'evaluate',
    'synthetic_triple',
]
