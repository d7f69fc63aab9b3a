"""Enumerations for promptloop."""

from enum import StrEnum


class ImageFormat(StrEnum):
    PNG = "png"
    PPM = "ppm"


class LuminanceRange(StrEnum):
    UNIT = "unit"
    BYTE = "byte"

    @property
    def peak(self) -> float:
        return 1.0 if self is LuminanceRange.UNIT else 255.0


class Condition(StrEnum):
    NO_PROMPT = "no_prompt"
    WITH_PROMPT = "with_prompt"

    @property
    def label(self) -> str:
        return "w/o prompt" if self is Condition.NO_PROMPT else "w prompt"


class Metric(StrEnum):
    RMSE = "rmse"
    PSNR = "psnr"
    FSIM = "fsim"
    SSIM = "ssim"
    UIQ = "uiq"
    SRE = "sre"

    @property
    def higher_is_better(self) -> bool:
        return self is not Metric.RMSE

    @property
    def arrow(self) -> str:
        return "↑" if self.higher_is_better else "↓"


class ReportFormat(StrEnum):
    CSV = "csv"
    MARKDOWN = "markdown"
    JSON = "json"

    @property
    def extension(self) -> str:
        return {"csv": "csv", "markdown": "md", "json": "json"}[self.value]


class OutputFormat(StrEnum):
    TEXT = "text"
    JSON = "json"
