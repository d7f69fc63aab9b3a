"""Ablation manifest loading."""

import json
import logging
from pathlib import Path

from pydantic import ValidationError

from app.exceptions import ManifestError
from app.models.ablation import Manifest

logger = logging.getLogger(__name__)


def load_manifest(path: Path, check_files: bool = True) -> Manifest:
    """Read and validate a JSON manifest.

    Relative image paths resolve against the manifest's directory.

    Raises:
        ManifestError: if the file is missing, not JSON, fails validation, or
            (with ``check_files``) names an image file that does not exist.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ManifestError(str(path), f"cannot read file: {exc.strerror or exc}") from exc

    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(str(path), f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc

    try:
        manifest = Manifest.model_validate(payload)
    except ValidationError as exc:
        raise ManifestError(str(path), _summarize_validation(exc)) from exc

    base = path.parent
    resolved = [
        entry.model_copy(update={"path": entry.path if entry.path.is_absolute() else base / entry.path})
        for entry in manifest.entries
    ]
    if check_files:
        missing = [f"{e.id} ({e.path})" for e in resolved if not e.path.is_file()]
        if missing:
            raise ManifestError(str(path), f"image file(s) not found: {', '.join(missing)}")

    manifest = manifest.model_copy(update={"entries": resolved})
    logger.info(
        "Loaded manifest %s: %d image(s), conditions=%s, master_seed=%d",
        path, len(manifest.entries), ",".join(manifest.conditions), manifest.master_seed,
    )
    return manifest


def _summarize_validation(exc: ValidationError) -> str:
    parts = []
    for error in exc.errors():
        location = ".".join(str(p) for p in error["loc"]) or "<root>"
        parts.append(f"{location}: {error['msg']}")
    return "; ".join(parts)
