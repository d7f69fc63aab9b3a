"""Metric configuration and report models."""

import math
from typing import Annotated, Any

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, model_validator

from app.models.enums import Metric


def _parse_float_token(value: Any) -> Any:
    """Accept the ``inf`` / ``-inf`` tokens used in CSV and JSON dumps."""
    if isinstance(value, str):
        token = value.strip().lower()
        if token in {"inf", "+inf", "infinity", "+infinity"}:
            return math.inf
        if token in {"-inf", "-infinity"}:
            return -math.inf
    return value


def _dump_float_token(value: float) -> float | str:
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


# Decibel values may be +/-infinite; JSON carries them as "inf" / "-inf" strings.
Decibels = Annotated[
    float,
    BeforeValidator(_parse_float_token),
    PlainSerializer(_dump_float_token, when_used="json"),
]


class MetricConfig(BaseModel):
    """Parameters for the six full-reference metrics.

    Defaults are the canonical literature parameterizations.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    ssim_window: int = Field(default=11, ge=2)
    ssim_sigma: float = Field(default=1.5, gt=0)
    ssim_k1: float = Field(default=0.01, gt=0)
    ssim_k2: float = Field(default=0.03, gt=0)
    uiq_window: int = Field(default=8, ge=2)
    fsim_scales: int = Field(default=4, ge=1)
    fsim_orientations: int = Field(default=4, ge=1)
    fsim_min_wavelength: float = Field(default=6.0, gt=0)
    fsim_mult: float = Field(default=2.0, gt=0)
    fsim_sigma_f: float = Field(default=0.55, gt=0, lt=1)
    fsim_t1: float = Field(default=0.85, gt=0)
    fsim_t2: float = Field(default=160.0, gt=0)
    psnr_max: float = Field(default=1.0, gt=0)


class MetricReport(BaseModel):
    """The six similarity scores for one (reference, candidate) pair."""

    model_config = ConfigDict(frozen=True)

    rmse: float = Field(ge=0)
    psnr: Decibels
    fsim: float = Field(ge=0, le=1)
    ssim: float = Field(ge=-1, le=1)
    uiq: float = Field(ge=-1, le=1)
    sre: Decibels

    @model_validator(mode="after")
    def _check_rmse_psnr(self) -> "MetricReport":
        if math.isnan(self.psnr) or math.isnan(self.sre):
            raise ValueError("psnr and sre must not be NaN")
        if (self.rmse == 0) != (self.psnr == math.inf):
            raise ValueError(f"rmse == 0 must coincide with infinite psnr (rmse={self.rmse}, psnr={self.psnr})")
        return self

    def value(self, metric: Metric) -> float:
        return float(getattr(self, metric.value))

    def better_than(self, other: "MetricReport", metric: Metric) -> bool:
        """True if this report strictly beats ``other`` on ``metric``."""
        mine, theirs = self.value(metric), other.value(metric)
        if metric.higher_is_better:
            return mine > theirs
        return mine < theirs

    def is_finite(self) -> bool:
        return all(math.isfinite(self.value(m)) for m in Metric)
