"""
Sign calibration of the off-diagonal closed forms against the oracle.
"""

import logging
from functools import lru_cache

from src.graphs.momentum import Momentum
from src.graphs.operations import path_graph
from src.scattering.closed_form import smatrix_closed2
from src.scattering.oracle import smatrix_oracle
from src.scattering.smatrix import RAW, SignCalibration
from src.utils.errors import CalibrationError

logger = logging.getLogger(__name__)

CALIBRATION_TOL = 1e-9


def calibrate_sign() -> SignCalibration:
    """
    Compare oracle and printed closed-form S12 on the single edge at k = -pi/4.

    The ratio of the two must be +1 or -1; that ratio is sigma.

    Returns:
        SignCalibration with both raw values recorded

    Raises:
        CalibrationError: If the moduli differ or the ratio is not +-1
    """
    graph = path_graph(1)
    k = Momentum.from_literal('-pi/4')
    oracle_value = complex(smatrix_oracle(graph, k)[0, 1])
    closed_raw = complex(smatrix_closed2(graph, k, RAW)[0, 1])
    if abs(abs(oracle_value) - abs(closed_raw)) > CALIBRATION_TOL:
        raise CalibrationError(
            f"|S12| mismatch during calibration: oracle {oracle_value}, closed {closed_raw}")
    ratio = oracle_value / closed_raw
    sigma = 1 if ratio.real > 0 else -1
    if abs(ratio - sigma) > CALIBRATION_TOL:
        raise CalibrationError(f"Oracle/closed-form ratio {ratio} is not +-1")
    logger.info("Calibrated off-diagonal sign sigma=%+d (oracle %s, closed %s)",
                sigma, oracle_value, closed_raw)
    return SignCalibration(sigma, "single edge (path_1) at k=-pi/4", oracle_value, closed_raw)


@lru_cache(maxsize=1)
def get_calibration() -> SignCalibration:
    """Process-wide calibration, computed once."""
    return calibrate_sign()
