"""Typer CLI interface for promptloop."""

import json
import logging
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

import typer
from rich.console import Console
from rich.logging import RichHandler

from app.config import CliConfig, build_config
from app.exceptions import (
    AblationRunError,
    BackendError,
    ConfigError,
    ImageError,
    ManifestError,
    MetricUndefinedError,
)
from app.models.enums import Condition, Metric, OutputFormat

EXIT_INPUT = 2
EXIT_BACKEND = 3
EXIT_EMPTY = 4

logger = logging.getLogger("app")

app = typer.Typer(
    name="promptloop",
    help="Prompt-guided image-to-image ablation: metrics, model clients, mocks.",
    no_args_is_help=True,
)


def _configure_logging(verbose: bool, debug: bool) -> None:
    level = logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=debug)],
        force=True,
    )


@app.callback()
def main(
    ctx: typer.Context,
    config: Path | None = typer.Option(
        None, "--config", "-c", envvar="PROMPTLOOP_CONFIG", help="TOML config file"
    ),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log progress at INFO level"),
    debug: bool = typer.Option(False, "--debug", help="Log at DEBUG level"),
) -> None:
    """promptloop: prompt-guided img2img ablation toolkit."""
    _configure_logging(verbose, debug)
    ctx.obj = {"config_file": config}


@contextmanager
def _exit_codes() -> Iterator[None]:
    """Map domain errors to the CLI's exit codes, message on stderr."""
    try:
        yield
    except AblationRunError as exc:
        typer.echo(f"Error: {exc}", err=True)
        for failure in exc.failures:
            typer.echo(f"  {failure.image_id}: {failure.error}", err=True)
        raise typer.Exit(EXIT_EMPTY)
    except BackendError as exc:
        typer.echo(f"Error: {exc}", err=True)
        raise typer.Exit(EXIT_BACKEND)
    except (ImageError, ManifestError, ConfigError, MetricUndefinedError, ValueError, OSError) as exc:
        typer.echo(f"Error: {exc}", err=True)
        raise typer.Exit(EXIT_INPUT)


def _config(ctx: typer.Context, **overrides) -> CliConfig:
    metrics = overrides.pop("metrics", None)
    generation = overrides.pop("generation", None)
    return build_config(ctx.obj["config_file"], overrides, metrics, generation)


@app.command()
def compare(
    ctx: typer.Context,
    ref_path: Path = typer.Argument(..., help="Reference image (.png, .ppm, .pgm)"),
    cand_path: Path = typer.Argument(..., help="Candidate image"),
    output_format: OutputFormat = typer.Option(OutputFormat.TEXT, "--format", "-f", help="text or json"),
    psnr_max: float | None = typer.Option(None, "--psnr-max", help="Peak signal for PSNR/SSIM constants"),
) -> None:
    """Compute all six similarity metrics between two images."""
    from app.imaging.codec import load_image
    from app.metrics.compare import compare_all

    with _exit_codes():
        cfg = _config(ctx, metrics={"psnr_max": psnr_max})
        report = compare_all(load_image(ref_path), load_image(cand_path), cfg.metrics)

    if output_format == OutputFormat.JSON:
        typer.echo(report.model_dump_json())
        return
    width = max(len(m.value) for m in Metric)
    for metric in Metric:
        typer.echo(f"{metric.value:<{width}}  {report.value(metric)}")


@app.command()
def prompt(
    ctx: typer.Context,
    image_path: Path = typer.Argument(..., help="Image to describe"),
    endpoint: str | None = typer.Option(
        None, "--endpoint", "--prompter", envvar="PROMPTLOOP_PROMPTER", help="Prompter service base URL"
    ),
    instruction: str | None = typer.Option(None, "--instruction", envvar="PROMPTLOOP_INSTRUCTION"),
    raw: bool = typer.Option(False, "--raw", help="Also print the verbatim model reply"),
    timeout: float | None = typer.Option(None, "--timeout", envvar="PROMPTLOOP_TIMEOUT"),
    max_retries: int | None = typer.Option(None, "--max-retries", envvar="PROMPTLOOP_MAX_RETRIES"),
    auth_token: str | None = typer.Option(None, "--auth-token", envvar="PROMPTLOOP_AUTH_TOKEN"),
) -> None:
    """Ask the prompter for a prompt / negative prompt pair."""
    from app.clients.prompter import PromptClient
    from app.imaging.codec import load_image

    with _exit_codes():
        cfg = _config(
            ctx,
            prompter=endpoint,
            instruction=instruction,
            timeout=timeout,
            max_retries=max_retries,
            auth_token=auth_token,
        )
        image = load_image(image_path)
        pair = PromptClient(cfg.endpoint("prompter")).request_prompts(image, cfg.instruction)

    typer.echo(f"Prompt: {pair.positive}")
    typer.echo(f"Negative prompt: {pair.negative}")
    if raw:
        typer.echo("Raw response:")
        typer.echo(pair.raw_response)


@app.command()
def generate(
    ctx: typer.Context,
    image_path: Path = typer.Argument(..., help="Initial image"),
    output: Path = typer.Option(..., "--output", "-o", help="Where to write the generated PNG"),
    generator: str | None = typer.Option(None, "--generator", envvar="PROMPTLOOP_GENERATOR"),
    prompter: str | None = typer.Option(
        None, "--prompter", envvar="PROMPTLOOP_PROMPTER", help="Extract prompts from the image first"
    ),
    positive: str | None = typer.Option(None, "--prompt", help="Explicit positive prompt"),
    negative: str = typer.Option("", "--negative", help="Explicit negative prompt"),
    no_prompt: bool = typer.Option(False, "--no-prompt", help="Prompt-less baseline, ignore --prompter"),
    strength: float | None = typer.Option(None, "--strength"),
    steps: int | None = typer.Option(None, "--steps"),
    guidance: float | None = typer.Option(None, "--guidance"),
    seed: int | None = typer.Option(None, "--seed", envvar="PROMPTLOOP_SEED"),
    instruction: str | None = typer.Option(None, "--instruction", envvar="PROMPTLOOP_INSTRUCTION"),
    timeout: float | None = typer.Option(None, "--timeout", envvar="PROMPTLOOP_TIMEOUT"),
    max_retries: int | None = typer.Option(None, "--max-retries", envvar="PROMPTLOOP_MAX_RETRIES"),
    auth_token: str | None = typer.Option(None, "--auth-token", envvar="PROMPTLOOP_AUTH_TOKEN"),
) -> None:
    """Run one img2img generation and save the result."""
    from app.clients.generator import GeneratorClient
    from app.clients.prompter import PromptClient
    from app.imaging.codec import load_image, save_image
    from app.models.generation import PromptPair

    with _exit_codes():
        cfg = _config(
            ctx,
            generator=generator,
            prompter=prompter,
            seed=seed,
            instruction=instruction,
            timeout=timeout,
            max_retries=max_retries,
            auth_token=auth_token,
            generation={"strength": strength, "steps": steps, "guidance": guidance},
        )
        init = load_image(image_path)
        prompts = None
        if positive is not None:
            prompts = PromptPair(positive=positive, negative=negative, raw_response="")
        elif not no_prompt and cfg.prompter:
            prompts = PromptClient(cfg.endpoint("prompter")).request_prompts(init, cfg.instruction)
        image = GeneratorClient(cfg.endpoint("generator")).generate_image(init, prompts, cfg.generation_params())
        save_image(image, output)

    if prompts is not None:
        typer.echo(f"Prompt: {prompts.positive}")
        typer.echo(f"Negative prompt: {prompts.negative}")
    typer.echo(f"Wrote {output}")


def _print_summary(summary, out_dir: Path) -> None:
    """Print per-condition means and win counts as an aligned table."""
    from app.reports.ablation import format_metric

    typer.echo("")
    typer.echo("=== Ablation Summary ===")
    typer.echo("")
    header = f"  {'Condition':<12}" + "".join(f" | {m.value.upper() + ' ' + m.arrow:>10}" for m in Metric)
    typer.echo(header)
    typer.echo("  " + "-" * (len(header) - 2))
    for condition in summary.conditions:
        means = summary.means.get(condition, {})
        cells = "".join(f" | {format_metric(m, means.get(m)):>10}" for m in Metric)
        typer.echo(f"  {condition.label:<12}{cells}")
    if summary.compared_images:
        wins = "".join(f" | {summary.wins[m]:>10}" for m in Metric)
        typer.echo(f"  {'wins':<12}{wins}")
    typer.echo("")
    typer.echo(f"{len(summary.records)} record(s), {len(summary.failures)} failure(s); reports in {out_dir}")
    if summary.partial:
        typer.echo("Warning: partial run, see report.md for failures", err=True)


@app.command()
def ablate(
    ctx: typer.Context,
    manifest_path: Path = typer.Argument(..., help="JSON manifest of input images"),
    prompter: str | None = typer.Option(None, "--prompter", envvar="PROMPTLOOP_PROMPTER"),
    generator: str | None = typer.Option(None, "--generator", envvar="PROMPTLOOP_GENERATOR"),
    out: Path | None = typer.Option(None, "--out", "-o", envvar="PROMPTLOOP_OUT", help="Output directory"),
    conditions: list[Condition] | None = typer.Option(
        None, "--conditions", help="Restrict to these conditions (repeatable)"
    ),
    seed: int | None = typer.Option(
        None, "--seed", envvar="PROMPTLOOP_SEED", help="Override the manifest master seed"
    ),
    instruction: str | None = typer.Option(None, "--instruction", envvar="PROMPTLOOP_INSTRUCTION"),
    timeout: float | None = typer.Option(None, "--timeout", envvar="PROMPTLOOP_TIMEOUT"),
    max_retries: int | None = typer.Option(None, "--max-retries", envvar="PROMPTLOOP_MAX_RETRIES"),
    auth_token: str | None = typer.Option(None, "--auth-token", envvar="PROMPTLOOP_AUTH_TOKEN"),
    concurrency: int | None = typer.Option(None, "--concurrency", envvar="PROMPTLOOP_CONCURRENCY"),
) -> None:
    """Run the with/without-prompt ablation and write report.{csv,md,json}."""
    from app.engines.ablation import run_ablation
    from app.ingestion.manifest import load_manifest
    from app.models.ablation import Manifest
    from app.reports.ablation import write_reports

    with _exit_codes():
        cfg = _config(
            ctx,
            prompter=prompter,
            generator=generator,
            out=out,
            seed=seed,
            instruction=instruction,
            timeout=timeout,
            max_retries=max_retries,
            auth_token=auth_token,
            concurrency=concurrency,
        )
        manifest = load_manifest(manifest_path)
        updates: dict = {}
        if conditions:
            updates["conditions"] = conditions
        # Values from any layer above the manifest (file, env, flag) override it.
        if "seed" in cfg.model_fields_set:
            updates["master_seed"] = cfg.seed
        if "instruction" in cfg.model_fields_set:
            updates["instruction"] = cfg.instruction
        if updates:
            manifest = Manifest.model_validate({**manifest.model_dump(by_alias=True), **updates})

        needs_prompter = Condition.WITH_PROMPT in manifest.conditions
        prompter_endpoint = cfg.endpoint("prompter") if needs_prompter else None
        summary = run_ablation(manifest, prompter_endpoint, cfg.endpoint("generator"), cfg.metrics, cfg.out)
        write_reports(summary, cfg.out)

    _print_summary(summary, cfg.out)


@app.command(name="mock-serve")
def mock_serve(
    host: str = typer.Option("127.0.0.1", "--host"),
    port: int = typer.Option(8000, "--port", "-p"),
    behavior_file: Path | None = typer.Option(None, "--behavior-file", help="JSON MockBehavior overrides"),
) -> None:
    """Serve the deterministic mock prompter and img2img endpoints."""
    from app.mocks.server import MockServer
    from app.models.mock import MockBehavior

    with _exit_codes():
        behavior = MockBehavior()
        if behavior_file is not None:
            try:
                payload = json.loads(behavior_file.read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError(str(behavior_file), str(exc)) from exc
            behavior = MockBehavior.model_validate(payload)

    try:
        server = MockServer(behavior, host, port)
    except OSError as exc:
        typer.echo(f"Error: cannot bind {host}:{port}: {exc.strerror or exc}", err=True)
        raise typer.Exit(EXIT_INPUT)

    # The request log is this command's output, so INFO is its floor.
    mock_logger = logging.getLogger("app.mocks")
    if not mock_logger.isEnabledFor(logging.INFO):
        mock_logger.setLevel(logging.INFO)

    typer.echo(f"Mock backends serving on {server.url} (Ctrl+C to stop)", err=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        logger.info("Mock server stopped")


if __name__ == "__main__":
    app()
