"""PNG and plain-netpbm (P2/P3) codecs for ImageBuffer.

PNG goes through Pillow, except 16-bit PNGs which pypng decodes at full
depth. Plain netpbm is tokenized here so decode errors can
name the exact byte offset of the offending token.
"""

import io
import logging
import re
import zlib
from pathlib import Path

import numpy as np
import png
from PIL import Image, UnidentifiedImageError

from app.exceptions import ImageDecodeError
from app.models.enums import ImageFormat
from app.models.image import ImageBuffer

logger = logging.getLogger(__name__)

PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"
MAX_NETPBM_VALUE = 65535
NETPBM_ROW_WIDTH = 70

_SUFFIX_FORMATS: dict[str, ImageFormat] = {
    ".png": ImageFormat.PNG,
    ".ppm": ImageFormat.PPM,
    ".pgm": ImageFormat.PPM,
    ".pnm": ImageFormat.PPM,
}

_TOKEN = re.compile(rb"#[^\n\r]*|[^\s#]+")


def decode(data: bytes, image_format: ImageFormat) -> ImageBuffer:
    """Decode a PNG or plain PPM/PGM byte stream into a normalized buffer."""
    image_format = ImageFormat(image_format)
    if image_format is ImageFormat.PNG:
        return _decode_png(data)
    return _decode_netpbm(data)


def encode(img: ImageBuffer, image_format: ImageFormat) -> bytes:
    """Encode a buffer as 8-bit PNG or plain netpbm (P3 for RGB, P2 for gray)."""
    image_format = ImageFormat(image_format)
    quantized = quantize(img)
    if image_format is ImageFormat.PNG:
        return _encode_png(quantized)
    return _encode_netpbm(quantized)


def quantize(img: ImageBuffer) -> np.ndarray:
    """Round samples to the nearest 8-bit level, shape (height, width, channels)."""
    return np.clip(np.rint(img.pixels * 255.0), 0, 255).astype(np.uint8)


def format_for_path(path: Path) -> ImageFormat:
    suffix = path.suffix.lower()
    if suffix not in _SUFFIX_FORMATS:
        raise ValueError(f"Unsupported image extension {path.suffix!r} for {path.name} (use .png, .ppm or .pgm)")
    return _SUFFIX_FORMATS[suffix]


def load_image(path: Path) -> ImageBuffer:
    """Read and decode an image file, choosing the codec from the suffix."""
    path = Path(path)
    image_format = format_for_path(path)
    img = decode(path.read_bytes(), image_format)
    logger.debug("Loaded %s (%dx%dx%d)", path, img.width, img.height, img.channels)
    return img


def save_image(img: ImageBuffer, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode(img, format_for_path(path)))
    return path


# --- PNG ---


def _decode_png(data: bytes) -> ImageBuffer:
    if not data.startswith(PNG_SIGNATURE):
        mismatch = next(
            (i for i, (a, b) in enumerate(zip(data, PNG_SIGNATURE)) if a != b),
            min(len(data), len(PNG_SIGNATURE)),
        )
        raise ImageDecodeError(mismatch, "missing PNG signature", "png")

    if _png_bit_depth(data) == 16:
        return _decode_png16(data)

    stream = io.BytesIO(data)
    try:
        with Image.open(stream, formats=["PNG"]) as pil_image:
            pil_image.load()
            pixels = _pil_to_unit(pil_image)
    except (UnidentifiedImageError, OSError, SyntaxError, ValueError) as exc:
        raise ImageDecodeError(stream.tell(), str(exc) or type(exc).__name__, "png") from exc
    return ImageBuffer(pixels)


def _png_bit_depth(data: bytes) -> int | None:
    """Bit depth from the IHDR chunk, or None when the header is incomplete."""
    if len(data) < 29 or data[12:16] != b"IHDR":
        return None
    return data[24]


def _decode_png16(data: bytes) -> ImageBuffer:
    # Pillow narrows 16-bit colour PNGs to 8 bits; pypng keeps every sample.
    try:
        width, height, rows, info = png.Reader(bytes=data).asDirect()
        raw = np.array([np.asarray(row, dtype=np.float64) for row in rows])
    except (png.Error, zlib.error, ValueError, EOFError) as exc:
        raise ImageDecodeError(len(PNG_SIGNATURE), str(exc) or type(exc).__name__, "png") from exc
    planes = info["planes"]
    if raw.shape != (height, width * planes):
        raise ImageDecodeError(len(data), f"expected {height} rows of {width * planes} samples", "png")
    color_planes = 1 if info["greyscale"] else 3
    maxval = float(2 ** info["bitdepth"] - 1)
    return ImageBuffer(raw.reshape(height, width, planes)[:, :, :color_planes] / maxval)


def _pil_to_unit(pil_image: Image.Image) -> np.ndarray:
    """Map a Pillow image to unit-range samples, dropping any alpha channel."""
    mode = pil_image.mode
    if mode in {"I;16", "I;16B", "I;16L", "I"}:
        # 16-bit grayscale
        raw = np.asarray(pil_image, dtype=np.float64)
        return raw[:, :, np.newaxis] / 65535.0
    if mode in {"1", "L", "LA"}:
        raw = np.asarray(pil_image.convert("L"), dtype=np.float64)
        return raw[:, :, np.newaxis] / 255.0
    if mode == "P":
        pil_image = pil_image.convert("RGBA") if "transparency" in pil_image.info else pil_image.convert("RGB")
        mode = pil_image.mode
    if mode not in {"RGB", "RGBA"}:
        pil_image = pil_image.convert("RGB")
    raw = np.asarray(pil_image, dtype=np.float64)
    return raw[:, :, :3] / 255.0


def _encode_png(quantized: np.ndarray) -> bytes:
    if quantized.shape[2] == 1:
        pil_image = Image.fromarray(quantized[:, :, 0])
    else:
        pil_image = Image.fromarray(quantized)
    buf = io.BytesIO()
    pil_image.save(buf, format="PNG", optimize=False)
    return buf.getvalue()


# --- Plain netpbm (P2 / P3) ---


def _decode_netpbm(data: bytes) -> ImageBuffer:
    tokens = [(m.start(), m.group()) for m in _TOKEN.finditer(data) if not m.group().startswith(b"#")]
    if not tokens:
        raise ImageDecodeError(0, "empty stream", "ppm")

    offset, magic = tokens[0]
    if magic not in {b"P2", b"P3"}:
        raise ImageDecodeError(offset, f"unsupported magic number {magic!r} (expected P3 or P2)", "ppm")
    channels = 3 if magic == b"P3" else 1

    header = []
    for name, index in (("width", 1), ("height", 2), ("maxval", 3)):
        if index >= len(tokens):
            raise ImageDecodeError(len(data), f"truncated header: missing {name}", "ppm")
        tok_offset, token = tokens[index]
        value = _parse_uint(token, tok_offset, name)
        if value < 1:
            raise ImageDecodeError(tok_offset, f"{name} must be >= 1, got {value}", "ppm")
        header.append(value)
    width, height, maxval = header
    if maxval > MAX_NETPBM_VALUE:
        raise ImageDecodeError(tokens[3][0], f"maxval {maxval} exceeds {MAX_NETPBM_VALUE}", "ppm")

    expected = width * height * channels
    body = tokens[4:]
    if len(body) < expected:
        raise ImageDecodeError(len(data), f"expected {expected} samples, found {len(body)}", "ppm")
    if len(body) > expected:
        raise ImageDecodeError(body[expected][0], f"unexpected data after {expected} samples", "ppm")

    samples = np.empty(expected, dtype=np.float64)
    for i, (tok_offset, token) in enumerate(body):
        value = _parse_uint(token, tok_offset, "sample")
        if value > maxval:
            raise ImageDecodeError(tok_offset, f"sample {value} exceeds maxval {maxval}", "ppm")
        samples[i] = value
    return ImageBuffer((samples / maxval).reshape(height, width, channels))


def _parse_uint(token: bytes, offset: int, name: str) -> int:
    if not token.isdigit():
        raise ImageDecodeError(offset, f"invalid {name} token {token[:16]!r}", "ppm")
    return int(token)


def _encode_netpbm(quantized: np.ndarray) -> bytes:
    height, width, channels = quantized.shape
    magic = "P3" if channels == 3 else "P2"
    lines = [magic, f"{width} {height}", "255"]
    for row in quantized.reshape(height, width * channels):
        values = [str(int(v)) for v in row]
        # plain netpbm lines should stay under 70 characters
        line: list[str] = []
        length = 0
        for value in values:
            if line and length + len(value) + 1 > NETPBM_ROW_WIDTH:
                lines.append(" ".join(line))
                line, length = [], 0
            line.append(value)
            length += len(value) + 1
        lines.append(" ".join(line))
    return ("\n".join(lines) + "\n").encode("ascii")
