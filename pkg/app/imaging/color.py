"""Luminance conversion."""

import numpy as np

from app.models.enums import LuminanceRange
from app.models.image import GrayImage, ImageBuffer

# ITU-R BT.601 luma weights
BT601_WEIGHTS = np.array([0.299, 0.587, 0.114])


def luminance_array(img: ImageBuffer, value_range: LuminanceRange = LuminanceRange.UNIT) -> np.ndarray:
    """BT.601 luma of ``img`` as a float64 (height, width) array in the requested range."""
    value_range = LuminanceRange(value_range)
    if img.channels == 1:
        luma = img.pixels[:, :, 0]
    else:
        luma = np.clip(img.pixels @ BT601_WEIGHTS, 0.0, 1.0)
    return luma * value_range.peak


def to_luminance(img: ImageBuffer, value_range: LuminanceRange = LuminanceRange.UNIT) -> GrayImage:
    value_range = LuminanceRange(value_range)
    return GrayImage(luminance_array(img, value_range), value_range)
