"""All six metrics for one (reference, candidate) pair."""

import math

from app.metrics.fsim import fsim
from app.metrics.pixelwise import check_same_shape, mse, psnr_from_mse, sre
from app.metrics.structural import ssim, uiq
from app.models.image import ImageBuffer
from app.models.metrics import MetricConfig, MetricReport


def compare_all(ref: ImageBuffer, cand: ImageBuffer, cfg: MetricConfig | None = None) -> MetricReport:
    """Compute the full MetricReport.

    RMSE and PSNR derive from one jointly pooled MSE, so
    ``psnr == -20 * log10(rmse)`` holds whenever ``psnr_max == 1``.
    """
    cfg = cfg or MetricConfig()
    check_same_shape(ref, cand, "compare_all")
    shared_mse = mse(ref, cand)
    return MetricReport(
        rmse=math.sqrt(shared_mse),
        psnr=psnr_from_mse(shared_mse, cfg.psnr_max),
        fsim=fsim(ref, cand, cfg),
        ssim=ssim(ref, cand, cfg),
        uiq=uiq(ref, cand, cfg),
        sre=sre(ref, cand),
    )
