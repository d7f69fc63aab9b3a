"""Client for the vision-LLM prompt service."""

import logging

import requests

from app.clients.reply_parser import parse_prompt_reply
from app.clients.transport import JsonTransport
from app.clients.wire import PROMPTS_PATH, PromptRequest, PromptResponse, image_to_b64
from app.models.generation import DEFAULT_INSTRUCTION, BackendEndpoint, PromptPair
from app.models.image import ImageBuffer

logger = logging.getLogger(__name__)


class PromptClient:
    """Asks the prompter to describe an image as a prompt / negative prompt pair."""

    def __init__(self, endpoint: BackendEndpoint, session: requests.Session | None = None):
        self.endpoint = endpoint
        self._transport = JsonTransport(endpoint, session)

    def request_prompts(self, image: ImageBuffer, instruction: str = DEFAULT_INSTRUCTION) -> PromptPair:
        """Send ``image`` as base64 PNG with ``instruction`` and parse the reply.

        Raises:
            ValueError: if ``instruction`` is blank.
            BackendUnreachableError: if the service cannot be reached after retries.
            PromptParseError: if no positive prompt can be recovered; the raw
                reply is attached.
        """
        if not instruction.strip():
            raise ValueError("instruction must not be empty")
        body = PromptRequest(image_png_b64=image_to_b64(image), instruction=instruction)
        reply = self._transport.post(PROMPTS_PATH, body, PromptResponse)
        logger.debug("Prompter reply (%d chars): %r", len(reply.reply), reply.reply[:200])
        return parse_prompt_reply(reply.reply)


def request_prompts(
    endpoint: BackendEndpoint, image: ImageBuffer, instruction: str = DEFAULT_INSTRUCTION
) -> PromptPair:
    return PromptClient(endpoint).request_prompts(image, instruction)
