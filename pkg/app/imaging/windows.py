"""Windowed first and second moments shared by SSIM and UIQ."""

from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np
from scipy import signal

from app.exceptions import ImageSizeError, ShapeMismatchError
from app.models.image import GrayImage


@dataclass(frozen=True)
class WindowStats:
    """Per-window moments laid out on the grid of window positions.

    Each field has shape ``(rows, cols)`` where position ``(i, j)`` is the
    window whose top-left pixel is ``(i * stride, j * stride)``.
    """

    mean_a: np.ndarray
    mean_b: np.ndarray
    var_a: np.ndarray
    var_b: np.ndarray
    covar: np.ndarray

    @property
    def grid_shape(self) -> tuple[int, int]:
        return self.mean_a.shape

    def __len__(self) -> int:
        return int(self.mean_a.size)

    def __iter__(self) -> Iterator[tuple[float, float, float, float, float]]:
        for values in zip(
            self.mean_a.ravel(), self.mean_b.ravel(), self.var_a.ravel(), self.var_b.ravel(), self.covar.ravel()
        ):
            yield tuple(float(v) for v in values)


def gaussian_window(size: int, sigma: float) -> np.ndarray:
    """Normalized ``size x size`` Gaussian weights (sum == 1)."""
    offsets = np.arange(size, dtype=np.float64) - (size - 1) / 2.0
    kernel_1d = np.exp(-(offsets**2) / (2.0 * sigma**2))
    kernel = np.outer(kernel_1d, kernel_1d)
    return kernel / kernel.sum()


def uniform_window(size: int) -> np.ndarray:
    return np.full((size, size), 1.0 / (size * size))


def sliding_window_stats(
    a: GrayImage | np.ndarray,
    b: GrayImage | np.ndarray,
    window: int,
    stride: int = 1,
    weights: np.ndarray | None = None,
) -> WindowStats:
    """Moments over every fully-contained ``window x window`` position.

    Without ``weights`` the moments are the plain population moments of the
    window's pixels; with ``weights`` (normalized to sum 1) they are the
    weighted moments.
    """
    x = _as_array(a)
    y = _as_array(b)
    if x.shape != y.shape:
        raise ShapeMismatchError(x.shape, y.shape, "sliding_window_stats")
    if window < 1 or stride < 1:
        raise ValueError(f"window and stride must be >= 1, got window={window}, stride={stride}")
    if window > min(x.shape):
        raise ImageSizeError(x.shape, window, "sliding_window_stats")

    if weights is None:
        kernel = uniform_window(window)
    else:
        kernel = np.asarray(weights, dtype=np.float64)
        if kernel.shape != (window, window):
            raise ShapeMismatchError(kernel.shape, (window, window), "sliding_window_stats weights")
        kernel = kernel / kernel.sum()

    def local_mean(field: np.ndarray) -> np.ndarray:
        return signal.correlate(field, kernel, mode="valid")[::stride, ::stride]

    mean_a = local_mean(x)
    mean_b = local_mean(y)
    var_a = local_mean(x * x) - mean_a * mean_a
    var_b = local_mean(y * y) - mean_b * mean_b
    covar = local_mean(x * y) - mean_a * mean_b
    return WindowStats(mean_a, mean_b, var_a, var_b, covar)


def _as_array(img: GrayImage | np.ndarray) -> np.ndarray:
    if isinstance(img, GrayImage):
        return img.pixels
    array = np.asarray(img, dtype=np.float64)
    if array.ndim != 2:
        raise ValueError(f"expected a 2-D luminance array, got ndim={array.ndim}")
    return array
