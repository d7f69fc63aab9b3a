"""Deterministic mock model services."""

from app.mocks.server import MockServer, start_mock_server
from app.mocks.synthetic import image_hash, mock_generate, mock_prompts

__all__ = ["MockServer", "image_hash", "mock_generate", "mock_prompts", "start_mock_server"]
