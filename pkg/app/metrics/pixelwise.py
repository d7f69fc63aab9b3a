"""Sample-wise error metrics: RMSE, PSNR and SRE."""

import math

import numpy as np

from app.exceptions import ShapeMismatchError
from app.models.image import ImageBuffer


def check_same_shape(ref: ImageBuffer, cand: ImageBuffer, operation: str) -> None:
    if ref.shape != cand.shape:
        raise ShapeMismatchError(ref.shape, cand.shape, operation)


def mse(ref: ImageBuffer, cand: ImageBuffer) -> float:
    """Mean squared error pooled jointly over pixels and channels."""
    check_same_shape(ref, cand, "mse")
    diff = ref.pixels - cand.pixels
    return float(np.mean(diff * diff))


def rmse(ref: ImageBuffer, cand: ImageBuffer) -> float:
    check_same_shape(ref, cand, "rmse")
    return math.sqrt(mse(ref, cand))


def psnr_from_mse(mse_value: float, peak: float = 1.0) -> float:
    if peak <= 0:
        raise ValueError(f"psnr peak must be > 0, got {peak}")
    if mse_value == 0:
        return math.inf
    return 10.0 * math.log10(peak * peak / mse_value)


def psnr(ref: ImageBuffer, cand: ImageBuffer, peak: float = 1.0) -> float:
    """Peak signal-to-noise ratio in dB; ``inf`` for identical images."""
    check_same_shape(ref, cand, "psnr")
    return psnr_from_mse(mse(ref, cand), peak)


def sre(ref: ImageBuffer, cand: ImageBuffer) -> float:
    """Signal-to-reconstruction-error ratio in dB, averaged over channels.

    Channels with zero error are +inf and sit out of the average; if every
    channel is error-free the result is +inf. A channel with zero mean but
    nonzero error is -inf and makes the whole result -inf.
    """
    check_same_shape(ref, cand, "sre")
    finite: list[float] = []
    for band in range(ref.channels):
        ref_band = ref.pixels[:, :, band]
        err = ref_band - cand.pixels[:, :, band]
        band_mse = float(np.mean(err * err))
        if band_mse == 0:
            continue
        signal_power = float(np.mean(ref_band)) ** 2
        if signal_power == 0:
            return -math.inf
        finite.append(10.0 * math.log10(signal_power / band_mse))
    if not finite:
        return math.inf
    return float(np.mean(finite))
