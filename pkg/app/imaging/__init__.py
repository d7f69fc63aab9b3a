"""Image decoding, color conversion and windowed/spectral primitives."""

from app.imaging.codec import decode, encode, load_image, save_image
from app.imaging.color import to_luminance
from app.imaging.spectral import fft2_filter
from app.imaging.windows import WindowStats, gaussian_window, sliding_window_stats

__all__ = [
    "WindowStats",
    "decode",
    "encode",
    "fft2_filter",
    "gaussian_window",
    "load_image",
    "save_image",
    "sliding_window_stats",
    "to_luminance",
]
