"""Consistency audit of RMSE/PSNR pairs in an ablation summary."""

import logging
import math

from app.models.ablation import AblationSummary, ConsistencyViolation

logger = logging.getLogger(__name__)


def cross_check_report(summary: AblationSummary, tolerance_db: float = 1e-6) -> list[ConsistencyViolation]:
    """Flag records whose PSNR disagrees with ``-20 * log10(rmse)`` by more than ``tolerance_db``.

    Only records with ``psnr_max == 1`` are checked. A record with zero RMSE
    and infinite PSNR is consistent.
    """
    violations: list[ConsistencyViolation] = []
    for record in summary.records:
        if record.psnr_max != 1.0:
            continue
        rmse, psnr = record.metrics.rmse, record.metrics.psnr
        if rmse == 0 and math.isinf(psnr):
            continue
        expected = -20.0 * math.log10(rmse)
        deviation = abs(psnr - expected)
        if deviation > tolerance_db:
            violations.append(
                ConsistencyViolation(
                    image_id=record.image_id,
                    condition=record.condition,
                    rmse=rmse,
                    psnr=psnr,
                    expected_psnr=expected,
                    deviation_db=deviation,
                )
            )
    if violations:
        logger.warning("%d record(s) fail the RMSE/PSNR identity at %.3g dB", len(violations), tolerance_db)
    return violations
