"""Data models for promptloop."""

from app.models.ablation import (
    AblationRecord,
    AblationSummary,
    ConsistencyViolation,
    ImageFailure,
    Manifest,
    ManifestEntry,
)
from app.models.enums import Condition, ImageFormat, LuminanceRange, Metric, OutputFormat, ReportFormat
from app.models.generation import DEFAULT_INSTRUCTION, BackendEndpoint, GenerationParams, PromptPair
from app.models.image import GrayImage, ImageBuffer
from app.models.metrics import MetricConfig, MetricReport
from app.models.mock import MockBehavior

__all__ = [
    "AblationRecord",
    "AblationSummary",
    "BackendEndpoint",
    "Condition",
    "ConsistencyViolation",
    "DEFAULT_INSTRUCTION",
    "GenerationParams",
    "GrayImage",
    "ImageBuffer",
    "ImageFailure",
    "ImageFormat",
    "LuminanceRange",
    "Manifest",
    "ManifestEntry",
    "Metric",
    "MetricConfig",
    "MetricReport",
    "MockBehavior",
    "OutputFormat",
    "PromptPair",
    "ReportFormat",
]
