"""JSON bodies of the prompter and img2img HTTP contract.

Field names are part of the contract; unknown fields are rejected.
"""

import base64
import binascii

from pydantic import BaseModel, ConfigDict, Field

from app.imaging.codec import decode, encode
from app.models.enums import ImageFormat
from app.models.image import ImageBuffer

PROMPTS_PATH = "/v1/prompts"
IMG2IMG_PATH = "/v1/img2img"
HEALTH_PATH = "/healthz"


class WireModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class PromptRequest(WireModel):
    image_png_b64: str
    instruction: str = Field(min_length=1)


class PromptResponse(WireModel):
    reply: str


class Img2ImgRequest(WireModel):
    init_png_b64: str
    prompt: str
    negative_prompt: str
    strength: float = Field(gt=0, le=1)
    steps: int = Field(ge=1)
    guidance: float = Field(ge=0)
    seed: int | None = Field(ge=0, lt=2**64)


class Img2ImgResponse(WireModel):
    image_png_b64: str


class ErrorResponse(WireModel):
    error: str


def image_to_b64(img: ImageBuffer) -> str:
    return base64.b64encode(encode(img, ImageFormat.PNG)).decode("ascii")


def image_from_b64(data: str) -> ImageBuffer:
    """Decode a base64 PNG field.

    Raises:
        ValueError: if the field is not valid base64.
        ImageDecodeError: if the bytes are not a PNG.
    """
    try:
        raw = base64.b64decode(data, validate=True)
    except binascii.Error as exc:
        raise ValueError(f"invalid base64 image field: {exc}") from exc
    return decode(raw, ImageFormat.PNG)
