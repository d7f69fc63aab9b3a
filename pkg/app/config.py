"""Layered CLI configuration: flags > environment > TOML file > model defaults.

Typer resolves flags and ``PROMPTLOOP_*`` environment variables into one
value per option; ``build_config`` lays those over the config file.
"""

import logging
import tomllib
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, SecretStr, ValidationError

from app.exceptions import ConfigError
from app.models.generation import DEFAULT_INSTRUCTION, BackendEndpoint, GenerationParams
from app.models.metrics import MetricConfig

logger = logging.getLogger(__name__)

ENV_PREFIX = "PROMPTLOOP_"


class CliConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    prompter: str | None = None
    generator: str | None = None
    timeout: float = Field(default=60.0, gt=0)
    max_retries: int = Field(default=2, ge=0)
    auth_token: SecretStr | None = None
    concurrency: int = Field(default=4, ge=1)
    out: Path = Path("out")
    seed: int | None = Field(default=None, ge=0, lt=2**64)
    instruction: str = Field(default=DEFAULT_INSTRUCTION, min_length=1)
    metrics: MetricConfig = Field(default_factory=MetricConfig)
    generation: GenerationParams = Field(default_factory=GenerationParams)

    def endpoint(self, role: str) -> BackendEndpoint:
        """BackendEndpoint for ``role`` ("prompter" or "generator").

        Raises:
            ConfigError: if no URL is configured for the role or it is invalid.
        """
        url = getattr(self, role)
        if not url:
            raise ConfigError(
                role, f"no {role} URL configured (use --{role} or {ENV_PREFIX}{role.upper()})"
            )
        try:
            return BackendEndpoint(
                base_url=url,
                timeout=self.timeout,
                max_retries=self.max_retries,
                auth_token=self.auth_token,
                concurrency=self.concurrency,
            )
        except ValidationError as exc:
            raise ConfigError(role, _summarize(exc)) from exc

    def generation_params(self) -> GenerationParams:
        """Generation params with the top-level seed applied, if set."""
        if self.seed is None:
            return self.generation
        return GenerationParams.model_validate({**self.generation.model_dump(), "seed": self.seed})


def load_config_file(path: Path | None) -> dict[str, Any]:
    if path is None:
        return {}
    path = Path(path)
    try:
        with path.open("rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(str(path), f"cannot read file: {exc.strerror or exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(str(path), f"invalid TOML: {exc}") from exc
    logger.debug("Loaded config file %s with keys %s", path, sorted(data))
    return data


def build_config(
    config_file: Path | None = None,
    overrides: dict[str, Any] | None = None,
    metric_overrides: dict[str, Any] | None = None,
    generation_overrides: dict[str, Any] | None = None,
) -> CliConfig:
    """Merge the config file with flag/env overrides and validate the result.

    ``None`` override values mean "not given" and leave lower layers alone.

    Raises:
        ConfigError: if the file cannot be read or any merged value is invalid.
    """
    data = load_config_file(config_file)
    data.update({k: v for k, v in (overrides or {}).items() if v is not None})
    for section, extra in (("metrics", metric_overrides), ("generation", generation_overrides)):
        given = {k: v for k, v in (extra or {}).items() if v is not None}
        if given:
            data[section] = {**data.get(section, {}), **given}
    try:
        return CliConfig.model_validate(data)
    except ValidationError as exc:
        source = str(config_file) if config_file else "command line"
        raise ConfigError(source, _summarize(exc)) from exc


def _summarize(exc: ValidationError) -> str:
    return "; ".join(f"{'.'.join(str(p) for p in e['loc']) or '<root>'}: {e['msg']}" for e in exc.errors())
