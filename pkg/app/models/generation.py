"""Prompt, generation-parameter and endpoint models for the model services."""

from pydantic import BaseModel, ConfigDict, Field, SecretStr, field_validator

DEFAULT_INSTRUCTION = "Generate prompt and negative prompt for this image."


class PromptPair(BaseModel):
    """Positive and negative prompt extracted from a vision-LLM reply."""

    model_config = ConfigDict(frozen=True)

    positive: str = Field(min_length=1)
    negative: str = ""
    raw_response: str

    @field_validator("positive")
    @classmethod
    def _positive_not_blank(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("positive prompt must not be blank")
        return value


class GenerationParams(BaseModel):
    """img2img knobs. The seed is optional; the service picks one when absent."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    strength: float = Field(default=0.6, gt=0, le=1)
    steps: int = Field(default=30, ge=1)
    guidance: float = Field(default=7.5, ge=0)
    seed: int | None = Field(default=None, ge=0, lt=2**64)


class BackendEndpoint(BaseModel):
    """Where and how to reach one model service."""

    model_config = ConfigDict(frozen=True)

    base_url: str
    timeout: float = Field(default=60.0, gt=0)
    max_retries: int = Field(default=2, ge=0)
    auth_token: SecretStr | None = None
    concurrency: int = Field(default=4, ge=1)

    @field_validator("base_url")
    @classmethod
    def _http_url(cls, value: str) -> str:
        if not value.startswith(("http://", "https://")):
            raise ValueError(f"base_url must start with http:// or https://, got {value!r}")
        return value.rstrip("/")

    def url(self, path: str) -> str:
        return f"{self.base_url}/{path.lstrip('/')}"
