"""Feature similarity index (FSIM) on luminance."""

import numpy as np
from scipy import ndimage

from app.exceptions import ImageSizeError, MetricUndefinedError
from app.imaging.color import luminance_array
from app.metrics.phase import phase_congruency
from app.metrics.pixelwise import check_same_shape
from app.models.enums import LuminanceRange
from app.models.image import ImageBuffer
from app.models.metrics import MetricConfig

FSIM_MIN_SIZE = 32
FSIM_TARGET_SIZE = 256

SCHARR_DX = np.array([[3.0, 0.0, -3.0], [10.0, 0.0, -10.0], [3.0, 0.0, -3.0]]) / 16.0
SCHARR_DY = SCHARR_DX.T


def downsample_factor(height: int, width: int) -> int:
    """``max(1, round(min(H, W) / 256))`` with halves rounded up."""
    return max(1, int(np.floor(min(height, width) / FSIM_TARGET_SIZE + 0.5)))


def mean_pool(field: np.ndarray, factor: int) -> np.ndarray:
    """Non-overlapping ``factor x factor`` block means; trailing partial blocks are cropped."""
    if factor == 1:
        return field
    rows = field.shape[0] // factor * factor
    cols = field.shape[1] // factor * factor
    blocks = field[:rows, :cols].reshape(rows // factor, factor, cols // factor, factor)
    return blocks.mean(axis=(1, 3))


def gradient_magnitude(field: np.ndarray) -> np.ndarray:
    """Scharr gradient magnitude with zero padding at the border."""
    gx = ndimage.convolve(field, SCHARR_DX, mode="constant", cval=0.0)
    gy = ndimage.convolve(field, SCHARR_DY, mode="constant", cval=0.0)
    return np.sqrt(gx * gx + gy * gy)


def fsim(ref: ImageBuffer, cand: ImageBuffer, cfg: MetricConfig | None = None) -> float:
    """FSIM between two images, in [0, 1].

    Luminance is taken in byte range so the default gradient threshold
    ``T2 = 160`` applies unchanged. Both images are mean-pooled toward a
    256-pixel short side before phase congruency and gradients are computed.

    Raises:
        ShapeMismatchError: if the shapes differ.
        ImageSizeError: if the pooled image is smaller than 32 pixels on a side.
        MetricUndefinedError: if neither image has any phase congruency and
            the two are not identical.
    """
    cfg = cfg or MetricConfig()
    check_same_shape(ref, cand, "fsim")

    factor = downsample_factor(ref.height, ref.width)
    y1 = mean_pool(luminance_array(ref, LuminanceRange.BYTE), factor)
    y2 = mean_pool(luminance_array(cand, LuminanceRange.BYTE), factor)
    if min(y1.shape) < FSIM_MIN_SIZE:
        raise ImageSizeError(ref.shape, FSIM_MIN_SIZE * factor, "fsim")

    bank = {
        "scales": cfg.fsim_scales,
        "orientations": cfg.fsim_orientations,
        "min_wavelength": cfg.fsim_min_wavelength,
        "mult": cfg.fsim_mult,
        "sigma_f": cfg.fsim_sigma_f,
    }
    pc1 = phase_congruency(y1, **bank)
    pc2 = phase_congruency(y2, **bank)
    g1 = gradient_magnitude(y1)
    g2 = gradient_magnitude(y2)

    s_pc = (2.0 * pc1 * pc2 + cfg.fsim_t1) / (pc1 * pc1 + pc2 * pc2 + cfg.fsim_t1)
    s_g = (2.0 * g1 * g2 + cfg.fsim_t2) / (g1 * g1 + g2 * g2 + cfg.fsim_t2)
    pc_max = np.maximum(pc1, pc2)

    weight = float(np.sum(pc_max))
    if weight == 0.0:
        if np.array_equal(y1, y2):
            return 1.0
        raise MetricUndefinedError("fsim", "no phase congruency in either image")
    return float(np.clip(np.sum(s_pc * s_g * pc_max) / weight, 0.0, 1.0))
