"""Window-based structural metrics: SSIM and the universal quality index."""

import numpy as np

from app.exceptions import ImageSizeError
from app.imaging.color import luminance_array
from app.imaging.windows import gaussian_window, sliding_window_stats
from app.metrics.pixelwise import check_same_shape
from app.models.image import ImageBuffer
from app.models.metrics import MetricConfig

# Moments below this are treated as exact zeros (roundoff of E[x^2] - E[x]^2).
ZERO_MOMENT_TOL = 1e-12


def ssim(ref: ImageBuffer, cand: ImageBuffer, cfg: MetricConfig | None = None) -> float:
    """Mean SSIM over every valid Gaussian-window position on luminance.

    Stride 1, no border padding; ``C1 = (k1 * L)^2`` and ``C2 = (k2 * L)^2``
    with ``L = cfg.psnr_max``.
    """
    cfg = cfg or MetricConfig()
    check_same_shape(ref, cand, "ssim")
    if min(ref.height, ref.width) < cfg.ssim_window:
        raise ImageSizeError(ref.shape, cfg.ssim_window, "ssim")

    stats = sliding_window_stats(
        luminance_array(ref),
        luminance_array(cand),
        cfg.ssim_window,
        weights=gaussian_window(cfg.ssim_window, cfg.ssim_sigma),
    )
    c1 = (cfg.ssim_k1 * cfg.psnr_max) ** 2
    c2 = (cfg.ssim_k2 * cfg.psnr_max) ** 2
    mu_x, mu_y = stats.mean_a, stats.mean_b
    numerator = (2.0 * mu_x * mu_y + c1) * (2.0 * stats.covar + c2)
    denominator = (mu_x * mu_x + mu_y * mu_y + c1) * (stats.var_a + stats.var_b + c2)
    ssim_map = numerator / denominator
    return float(np.clip(np.mean(ssim_map), -1.0, 1.0))


def uiq(ref: ImageBuffer, cand: ImageBuffer, cfg: MetricConfig | None = None) -> float:
    """Universal image quality index averaged over uniform sliding windows.

    A window whose denominator vanishes scores 1 when the two windows are
    identical and 0 otherwise.
    """
    cfg = cfg or MetricConfig()
    check_same_shape(ref, cand, "uiq")
    if min(ref.height, ref.width) < cfg.uiq_window:
        raise ImageSizeError(ref.shape, cfg.uiq_window, "uiq")

    stats = sliding_window_stats(luminance_array(ref), luminance_array(cand), cfg.uiq_window)
    return float(np.clip(np.mean(uiq_map(stats.mean_a, stats.mean_b, stats.var_a, stats.var_b, stats.covar)), -1, 1))


def uiq_map(
    mu_x: np.ndarray,
    mu_y: np.ndarray,
    var_x: np.ndarray,
    var_y: np.ndarray,
    covar: np.ndarray,
) -> np.ndarray:
    """Per-window quality index Q from precomputed moments."""
    contrast = var_x + var_y
    luminance = mu_x * mu_x + mu_y * mu_y
    degenerate = (contrast <= ZERO_MOMENT_TOL) | (luminance <= ZERO_MOMENT_TOL)
    identical = (contrast <= ZERO_MOMENT_TOL) & (np.abs(mu_x - mu_y) <= ZERO_MOMENT_TOL)

    safe_denominator = np.where(degenerate, 1.0, contrast * luminance)
    q = 4.0 * covar * mu_x * mu_y / safe_denominator
    return np.where(degenerate, np.where(identical, 1.0, 0.0), q)
