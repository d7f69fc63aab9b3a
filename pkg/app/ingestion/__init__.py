"""Loading of ablation manifests."""

from app.ingestion.manifest import load_manifest

__all__ = ["load_manifest"]
