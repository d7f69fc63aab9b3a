"""Client for the img2img generation service."""

import logging

import requests

from app.clients.transport import JsonTransport
from app.clients.wire import IMG2IMG_PATH, Img2ImgRequest, Img2ImgResponse, image_from_b64, image_to_b64
from app.exceptions import ImageDecodeError, PayloadError
from app.models.generation import BackendEndpoint, GenerationParams, PromptPair
from app.models.image import ImageBuffer

logger = logging.getLogger(__name__)


class GeneratorClient:
    def __init__(self, endpoint: BackendEndpoint, session: requests.Session | None = None):
        self.endpoint = endpoint
        self._transport = JsonTransport(endpoint, session)

    def generate_image(
        self,
        init: ImageBuffer,
        prompts: PromptPair | None,
        params: GenerationParams | None = None,
    ) -> ImageBuffer:
        """Run one img2img generation from ``init``.

        Without ``prompts`` the request carries empty prompt fields, which is
        the prompt-less baseline.

        Raises:
            BackendUnreachableError: if the service cannot be reached after retries.
            PayloadError: if the returned image cannot be decoded.
        """
        params = params or GenerationParams()
        body = Img2ImgRequest(
            init_png_b64=image_to_b64(init),
            prompt=prompts.positive if prompts else "",
            negative_prompt=prompts.negative if prompts else "",
            strength=params.strength,
            steps=params.steps,
            guidance=params.guidance,
            seed=params.seed,
        )
        logger.debug(
            "img2img request: prompted=%s strength=%.3f steps=%d seed=%s",
            prompts is not None, params.strength, params.steps, params.seed,
        )
        reply = self._transport.post(IMG2IMG_PATH, body, Img2ImgResponse)
        try:
            return image_from_b64(reply.image_png_b64)
        except (ValueError, ImageDecodeError) as exc:
            raise PayloadError(self.endpoint.url(IMG2IMG_PATH), str(exc)) from exc


def generate_image(
    endpoint: BackendEndpoint,
    init: ImageBuffer,
    prompts: PromptPair | None,
    params: GenerationParams | None = None,
) -> ImageBuffer:
    return GeneratorClient(endpoint).generate_image(init, prompts, params)
