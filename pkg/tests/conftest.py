"""Shared test fixtures for promptloop."""

import json
from pathlib import Path

import pytest

from app.imaging.codec import save_image
from app.mocks.server import MockServer
from app.models.generation import BackendEndpoint
from app.models.image import ImageBuffer
from app.models.mock import MockBehavior
from tests.scenes import natural_scene

SCENE_IDS = ["dog", "astronaut", "plane", "skyscraper"]


@pytest.fixture
def scene() -> ImageBuffer:
    return natural_scene(64, 3, seed=7)


@pytest.fixture
def gray_scene() -> ImageBuffer:
    return natural_scene(48, 1, seed=11)


@pytest.fixture(scope="session")
def mock_server():
    """Mock prompter + img2img on an ephemeral port for the whole session."""
    with MockServer(MockBehavior()) as server:
        yield server


@pytest.fixture(scope="session")
def mock_endpoint(mock_server: MockServer) -> BackendEndpoint:
    return BackendEndpoint(base_url=mock_server.url, timeout=10.0, max_retries=0)


@pytest.fixture
def no_sleep(monkeypatch) -> list[float]:
    """Replace retry backoff sleeps with a recorder."""
    slept: list[float] = []
    monkeypatch.setattr("app.clients.transport.time.sleep", slept.append)
    return slept


@pytest.fixture
def scene_manifest(tmp_path: Path) -> Path:
    """Four-scene manifest with PNG inputs next to it."""
    images_dir = tmp_path / "inputs"
    entries = []
    for index, image_id in enumerate(SCENE_IDS):
        path = images_dir / f"{image_id}.png"
        save_image(natural_scene(64, 3, seed=100 + index), path)
        entries.append({"id": image_id, "path": f"inputs/{image_id}.png"})
    manifest_path = tmp_path / "manifest.json"
    manifest_path.write_text(
        json.dumps({"master_seed": 1234, "params": {"strength": 0.6, "steps": 30}, "images": entries}),
        encoding="utf-8",
    )
    return manifest_path
