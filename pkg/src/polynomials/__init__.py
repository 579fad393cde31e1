"""
Exact polynomial layer: polynomials and rational functions in y, and
characteristic polynomials of graphs and their vertex-deleted subgraphs.
"""

from .charpoly import (
    CharpolySet,
    bareiss_det,
    berkowitz,
    charpoly,
    charpoly_schwenk,
    interior_charpoly_product,
    path_sum,
    path_sum_adjugate,
    path_sum_poly,
    series_charpoly,
    vertex_deleted_charpolys,
)
from .polynomial import Polynomial, poly_gcd
from .rational import (
    ZERO_ORDER,
    LaurentExpansion,
    PoleError,
    RationalFunction,
    laurent_expand,
    rf_arith,
    rf_derivative,
)

__all__ = [
    'CharpolySet', 'bareiss_det', 'berkowitz', 'charpoly', 'charpoly_schwenk',
    'interior_charpoly_product', 'path_sum', 'path_sum_adjugate', 'path_sum_poly',
    'series_charpoly', 'vertex_deleted_charpolys',
    'Polynomial', 'poly_gcd',
    'ZERO_ORDER', 'LaurentExpansion', 'PoleError', 'RationalFunction',
    'laurent_expand', 'rf_arith', 'rf_derivative',
]
