"""Deterministic stand-ins for the prompter and the img2img generator.

Everything here is a pure function of its inputs: the image contributes a
64-bit BLAKE2b hash of its shape and 8-bit samples, and all randomness
comes from a PCG64 generator seeded with ``(hash, seed, prompt-empty flag)``.
"""

import hashlib

import numpy as np

from app.imaging.codec import quantize
from app.models.generation import DEFAULT_INSTRUCTION, GenerationParams
from app.models.image import ImageBuffer
from app.models.mock import MockBehavior


def image_hash(image: ImageBuffer) -> int:
    """Stable 64-bit hash of an image's shape and 8-bit quantized samples."""
    digest = hashlib.blake2b(digest_size=8)
    digest.update(np.asarray(image.shape, dtype="<u4").tobytes())
    digest.update(quantize(image).tobytes())
    return int.from_bytes(digest.digest(), "big")


def mock_prompts(
    image: ImageBuffer,
    instruction: str = DEFAULT_INSTRUCTION,
    behavior: MockBehavior | None = None,
) -> str:
    """Labeled two-line reply keyed by the image hash.

    The instruction does not affect the prompts; it is echoed on a trailing
    comment line.
    """
    behavior = behavior or MockBehavior()
    positive = behavior.prompt_template.replace("{hash}", f"{image_hash(image):016x}")
    echoed = " ".join(instruction.split())
    return f"Prompt: {positive}\nNegative prompt: {behavior.negative_template}\n# instruction: {echoed}"


def mock_rng(image: ImageBuffer, seed: int | None, prompt_empty: bool) -> np.random.Generator:
    """PCG64 generator keyed by image hash, seed (absent means 0) and prompt-empty flag."""
    return np.random.Generator(np.random.PCG64([image_hash(image), seed or 0, int(prompt_empty)]))


def mock_generate(
    init: ImageBuffer,
    prompt: str,
    negative: str = "",
    params: GenerationParams | None = None,
    behavior: MockBehavior | None = None,
) -> ImageBuffer:
    """Perturb ``init`` with Gaussian noise; prompt-less requests get more noise and a color offset.

    The negative prompt does not change the output.
    """
    params = params or GenerationParams()
    behavior = behavior or MockBehavior()
    prompt_empty = not prompt.strip()
    rng = mock_rng(init, params.seed, prompt_empty)

    sigma = behavior.noise_without_prompt if prompt_empty else behavior.noise_with_prompt
    pixels = init.pixels
    noise = rng.normal(0.0, sigma, size=pixels.shape) if sigma > 0 else np.zeros(pixels.shape)
    out = pixels + noise
    if prompt_empty:
        shift = np.asarray(behavior.hue_shift_without_prompt, dtype=np.float64)
        out = out + (shift[: init.channels] if init.channels == 3 else shift[0])
    return ImageBuffer(np.clip(out, 0.0, 1.0))
