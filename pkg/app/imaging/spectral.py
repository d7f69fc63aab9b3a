"""Frequency-domain filtering on native-size images (no padding)."""

import numpy as np
from scipy import fft

from app.exceptions import ShapeMismatchError
from app.models.image import GrayImage


def spectrum(img: GrayImage | np.ndarray) -> np.ndarray:
    """Unnormalized forward 2-D FFT."""
    return fft.fft2(_as_array(img))


def filter_spectrum(image_spectrum: np.ndarray, transfer: np.ndarray) -> np.ndarray:
    """Apply ``transfer`` to a precomputed spectrum and return the spatial field."""
    if image_spectrum.shape != np.shape(transfer):
        raise ShapeMismatchError(image_spectrum.shape, np.shape(transfer), "fft2_filter")
    return fft.ifft2(image_spectrum * transfer)


def fft2_filter(img: GrayImage | np.ndarray, transfer: np.ndarray) -> np.ndarray:
    """Return ``ifft2(fft2(img) * transfer)`` as a complex field.

    Forward/inverse use the "backward" normalization, so an all-ones transfer
    reproduces the input.
    """
    field = _as_array(img)
    if field.shape != np.shape(transfer):
        raise ShapeMismatchError(field.shape, np.shape(transfer), "fft2_filter")
    return filter_spectrum(spectrum(field), np.asarray(transfer))


def centered_axis(n: int) -> np.ndarray:
    """Normalized frequency coordinates along one axis, zero frequency centered.

    Odd lengths span [-0.5, 0.5] inclusive; even lengths span [-0.5, 0.5).
    """
    if n % 2:
        return np.arange(-(n - 1) / 2, (n - 1) / 2 + 1) / max(n - 1, 1)
    return np.arange(-n / 2, n / 2) / n


def polar_frequency_grid(shape: tuple[int, int]) -> tuple[np.ndarray, np.ndarray]:
    """Radius and angle of every frequency sample, in unshifted FFT order.

    The DC radius is set to 1 so log-radial filters stay finite there; callers
    zero the DC response explicitly.
    """
    rows, cols = shape
    x, y = np.meshgrid(centered_axis(cols), centered_axis(rows))
    radius = fft.ifftshift(np.sqrt(x**2 + y**2))
    theta = fft.ifftshift(np.arctan2(-y, x))
    radius[0, 0] = 1.0
    return radius, theta


def butterworth_lowpass(shape: tuple[int, int], cutoff: float, order: int) -> np.ndarray:
    """Butterworth low-pass transfer in unshifted FFT order."""
    rows, cols = shape
    x, y = np.meshgrid(centered_axis(cols), centered_axis(rows))
    radius = np.sqrt(x**2 + y**2)
    return fft.ifftshift(1.0 / (1.0 + (radius / cutoff) ** (2 * order)))


def _as_array(img: GrayImage | np.ndarray) -> np.ndarray:
    if isinstance(img, GrayImage):
        return img.pixels
    array = np.asarray(img)
    if array.ndim != 2:
        raise ValueError(f"expected a 2-D field, got ndim={array.ndim}")
    return array
