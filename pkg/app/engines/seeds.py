"""Per-image seed derivation from a manifest master seed."""

import numpy as np

SEED_UPPER_BOUND = 2**63


def derive_seeds(master_seed: int, image_ids: list[str]) -> dict[str, int]:
    """One seed per image, drawn in manifest order from a PCG64 stream.

    Both conditions of an image share its seed.
    """
    rng = np.random.Generator(np.random.PCG64(master_seed))
    draws = rng.integers(0, SEED_UPPER_BOUND, size=len(image_ids), dtype=np.uint64)
    return {image_id: int(seed) for image_id, seed in zip(image_ids, draws)}
