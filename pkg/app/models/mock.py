"""Behavior model for the deterministic mock backends."""

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class MockBehavior(BaseModel):
    """Knobs for the mock prompter and img2img service.

    Prompt-less generations get more noise plus a per-channel color offset,
    so every similarity metric prefers the prompted output.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    prompt_template: str = "a detailed photograph of scene {hash}, natural light, sharp focus"
    negative_template: str = "blurry, distorted, extra objects, watermark"
    noise_with_prompt: float = Field(default=0.02, ge=0)
    noise_without_prompt: float = Field(default=0.08, le=0.5)
    hue_shift_without_prompt: tuple[float, float, float] = (0.05, 0.0, 0.0)
    auth_token: str | None = None

    @field_validator("prompt_template")
    @classmethod
    def _has_hash_placeholder(cls, value: str) -> str:
        if "{hash}" not in value:
            raise ValueError("prompt_template must contain a {hash} placeholder")
        return value

    @model_validator(mode="after")
    def _noise_ordering(self) -> "MockBehavior":
        if not self.noise_with_prompt < self.noise_without_prompt:
            raise ValueError(
                "noise_with_prompt must be strictly less than noise_without_prompt "
                f"({self.noise_with_prompt} >= {self.noise_without_prompt})"
            )
        return self
