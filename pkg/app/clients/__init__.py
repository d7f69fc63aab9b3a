"""Clients for the prompter and img2img model services."""

from app.clients.generator import GeneratorClient, generate_image
from app.clients.prompter import PromptClient, request_prompts
from app.clients.reply_parser import parse_prompt_reply

__all__ = [
    "GeneratorClient",
    "PromptClient",
    "generate_image",
    "parse_prompt_reply",
    "request_prompts",
]
