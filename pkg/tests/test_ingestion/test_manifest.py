"""Tests for ablation manifest loading."""

import json
from pathlib import Path

import pytest

from app.exceptions import ManifestError
from app.ingestion import load_manifest
from app.models.enums import Condition


def _write(tmp_path: Path, payload: dict | str) -> Path:
    path = tmp_path / "manifest.json"
    path.write_text(payload if isinstance(payload, str) else json.dumps(payload), encoding="utf-8")
    return path


class TestLoadManifest:
    def test_relative_paths_resolve_against_manifest(self, scene_manifest):
        manifest = load_manifest(scene_manifest)
        assert [e.id for e in manifest.entries] == ["dog", "astronaut", "plane", "skyscraper"]
        assert manifest.entries[0].path == scene_manifest.parent / "inputs" / "dog.png"
        assert manifest.master_seed == 1234
        assert manifest.params.strength == 0.6
        assert manifest.conditions == [Condition.NO_PROMPT, Condition.WITH_PROMPT]

    def test_missing_file(self, tmp_path):
        with pytest.raises(ManifestError, match="cannot read"):
            load_manifest(tmp_path / "absent.json")

    def test_invalid_json(self, tmp_path):
        with pytest.raises(ManifestError, match="invalid JSON at line 1"):
            load_manifest(_write(tmp_path, "{not json"))

    def test_missing_image_file(self, tmp_path):
        path = _write(tmp_path, {"images": [{"id": "ghost", "path": "ghost.png"}]})
        with pytest.raises(ManifestError, match="ghost"):
            load_manifest(path)
        assert load_manifest(path, check_files=False).entries[0].id == "ghost"

    @pytest.mark.parametrize(
        "payload",
        [
            {"images": []},
            {"images": [{"id": "a", "path": "a.png"}, {"id": "a", "path": "b.png"}]},
            {"images": [{"id": "a/b", "path": "a.png"}]},
            {"images": [{"id": "a", "path": "a.png"}], "conditions": ["sometimes"]},
            {"images": [{"id": "a", "path": "a.png"}], "params": {"strength": 0}},
            {"images": [{"id": "a", "path": "a.png"}], "unexpected": 1},
        ],
    )
    def test_validation_errors(self, tmp_path, payload):
        with pytest.raises(ManifestError):
            load_manifest(_write(tmp_path, payload), check_files=False)
