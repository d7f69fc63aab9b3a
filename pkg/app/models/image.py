"""Decoded raster types shared by codecs and metrics.

Samples are held as read-only float64 numpy arrays. ``ImageBuffer`` keeps
shape ``(height, width, channels)``, which in C order is exactly the
row-major interleaved sample layout.
"""

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from app.models.enums import LuminanceRange

SUPPORTED_CHANNELS = (1, 3)


def _frozen(array: np.ndarray) -> np.ndarray:
    out = np.array(array, dtype=np.float64, copy=True, order="C")
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class ImageBuffer:
    """A decoded image with normalized samples in [0, 1]."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        pixels = np.asarray(self.pixels, dtype=np.float64)
        if pixels.ndim == 2:
            pixels = pixels[:, :, np.newaxis]
        if pixels.ndim != 3:
            raise ValueError(f"ImageBuffer expects a (height, width, channels) array, got ndim={pixels.ndim}")
        height, width, channels = pixels.shape
        if height < 1 or width < 1:
            raise ValueError(f"ImageBuffer dimensions must be >= 1, got {width}x{height}")
        if channels not in SUPPORTED_CHANNELS:
            raise ValueError(f"ImageBuffer channels must be 1 or 3, got {channels}")
        if not np.all(np.isfinite(pixels)):
            raise ValueError("ImageBuffer samples must be finite")
        if pixels.min() < 0.0 or pixels.max() > 1.0:
            raise ValueError(
                f"ImageBuffer samples must lie in [0, 1], got range [{pixels.min()}, {pixels.max()}]"
            )
        object.__setattr__(self, "pixels", _frozen(pixels))

    @classmethod
    def from_samples(cls, width: int, height: int, channels: int, samples: Iterable[float]) -> "ImageBuffer":
        """Build a buffer from a flat row-major interleaved sample sequence."""
        flat = np.asarray(list(samples), dtype=np.float64)
        expected = width * height * channels
        if flat.size != expected:
            raise ValueError(f"Expected {expected} samples for {width}x{height}x{channels}, got {flat.size}")
        return cls(flat.reshape(height, width, channels))

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def channels(self) -> int:
        return int(self.pixels.shape[2])

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.height, self.width, self.channels)

    @property
    def samples(self) -> np.ndarray:
        """Flat row-major interleaved view of the samples."""
        return self.pixels.reshape(-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ImageBuffer):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.pixels, other.pixels))

    def __hash__(self) -> int:
        return hash((self.shape, self.pixels.tobytes()))


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Single-plane luminance image in either unit or byte range."""

    pixels: np.ndarray
    value_range: LuminanceRange = LuminanceRange.UNIT

    def __post_init__(self) -> None:
        pixels = np.asarray(self.pixels, dtype=np.float64)
        if pixels.ndim != 2:
            raise ValueError(f"GrayImage expects a 2-D array, got ndim={pixels.ndim}")
        if pixels.shape[0] < 1 or pixels.shape[1] < 1:
            raise ValueError("GrayImage dimensions must be >= 1")
        peak = self.value_range.peak
        if not np.all(np.isfinite(pixels)) or pixels.min() < 0.0 or pixels.max() > peak:
            raise ValueError(f"GrayImage samples must lie in [0, {peak:g}]")
        object.__setattr__(self, "pixels", _frozen(pixels))

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.height, self.width)

    @property
    def samples(self) -> np.ndarray:
        return self.pixels.reshape(-1)
