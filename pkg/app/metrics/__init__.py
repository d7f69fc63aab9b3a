"""Full-reference image similarity metrics."""

from app.metrics.compare import compare_all
from app.metrics.fsim import fsim
from app.metrics.phase import phase_congruency
from app.metrics.pixelwise import mse, psnr, rmse, sre
from app.metrics.structural import ssim, uiq

__all__ = [
    "compare_all",
    "fsim",
    "mse",
    "phase_congruency",
    "psnr",
    "rmse",
    "sre",
    "ssim",
    "uiq",
]
