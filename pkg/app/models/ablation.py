"""Ablation manifest, record and summary models."""

from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.models.enums import Condition, Metric
from app.models.generation import DEFAULT_INSTRUCTION, GenerationParams, PromptPair
from app.models.metrics import MetricReport


class ManifestEntry(BaseModel):
    id: str = Field(min_length=1)
    path: Path

    @field_validator("id")
    @classmethod
    def _id_not_blank(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("image id must not be blank")
        if "/" in value or "\\" in value or value in {".", ".."}:
            raise ValueError(f"image id must be usable as a directory name, got {value!r}")
        return value


class Manifest(BaseModel):
    """Declarative description of one ablation run."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    master_seed: int = Field(default=0, ge=0)
    instruction: str = Field(default=DEFAULT_INSTRUCTION, min_length=1)
    params: GenerationParams = Field(default_factory=GenerationParams)
    entries: list[ManifestEntry] = Field(alias="images", min_length=1)
    conditions: list[Condition] = Field(
        default_factory=lambda: [Condition.NO_PROMPT, Condition.WITH_PROMPT],
        min_length=1,
    )

    @field_validator("entries")
    @classmethod
    def _unique_ids(cls, entries: list[ManifestEntry]) -> list[ManifestEntry]:
        seen: set[str] = set()
        for entry in entries:
            if entry.id in seen:
                raise ValueError(f"duplicate image id: {entry.id}")
            seen.add(entry.id)
        return entries

    @field_validator("conditions")
    @classmethod
    def _canonical_order(cls, conditions: list[Condition]) -> list[Condition]:
        # no_prompt always runs first for a given image
        return [c for c in Condition if c in set(conditions)]


class AblationRecord(BaseModel):
    """One row of the per-image comparison table."""

    image_id: str
    condition: Condition
    prompts: PromptPair | None = None
    metrics: MetricReport
    generated_path: str
    seed: int | None = None
    psnr_max: float = Field(default=1.0, gt=0)

    @model_validator(mode="after")
    def _prompts_match_condition(self) -> "AblationRecord":
        has_prompts = self.prompts is not None
        if has_prompts != (self.condition == Condition.WITH_PROMPT):
            raise ValueError(f"prompts must be present iff condition is with_prompt (condition={self.condition})")
        return self


class ImageFailure(BaseModel):
    image_id: str
    condition: Condition | None = None
    error: str


class AblationSummary(BaseModel):
    """Aggregated ablation outcome: per-condition means, win counts and records."""

    means: dict[Condition, dict[Metric, float | None]]
    wins: dict[Metric, int]
    compared_images: int = Field(ge=0)
    records: list[AblationRecord]
    failures: list[ImageFailure] = Field(default_factory=list)
    nonfinite_rows: list[str] = Field(default_factory=list)

    @property
    def partial(self) -> bool:
        return bool(self.failures)

    @property
    def conditions(self) -> list[Condition]:
        present = {r.condition for r in self.records}
        return [c for c in Condition if c in present]

    @property
    def image_ids(self) -> list[str]:
        ordered: list[str] = []
        for record in self.records:
            if record.image_id not in ordered:
                ordered.append(record.image_id)
        return ordered

    @model_validator(mode="after")
    def _wins_bounded(self) -> "AblationSummary":
        n_images = len(self.image_ids)
        for metric, count in self.wins.items():
            if count > n_images:
                raise ValueError(f"win count for {metric} ({count}) exceeds image count ({n_images})")
        return self


class ConsistencyViolation(BaseModel):
    image_id: str
    condition: Condition
    rmse: float
    psnr: float
    expected_psnr: float
    deviation_db: float
