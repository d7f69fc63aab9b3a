"""With/without-prompt ablation over an image manifest."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import pandas as pd

from app.clients.generator import GeneratorClient
from app.clients.prompter import PromptClient
from app.engines.seeds import derive_seeds
from app.exceptions import AblationRunError, PromptLoopError
from app.imaging.codec import load_image, save_image
from app.metrics.compare import compare_all
from app.models.ablation import AblationRecord, AblationSummary, ImageFailure, Manifest, ManifestEntry
from app.models.enums import Condition, Metric
from app.models.generation import BackendEndpoint
from app.models.metrics import MetricConfig

logger = logging.getLogger(__name__)


@dataclass
class _ImageOutcome:
    records: list[AblationRecord] = field(default_factory=list)
    failures: list[ImageFailure] = field(default_factory=list)


class AblationEngine:
    """Runs every manifest image through each condition and scores the outputs.

    Metrics always compare the original input with the generated image.
    Images run concurrently up to the smaller of the two client concurrency
    caps; the conditions of one image run in order, sharing one seed.
    """

    def __init__(
        self,
        prompter: PromptClient | None,
        generator: GeneratorClient,
        out_dir: Path,
        cfg: MetricConfig | None = None,
    ):
        self.prompter = prompter
        self.generator = generator
        self.out_dir = Path(out_dir)
        self.cfg = cfg or MetricConfig()

    @property
    def max_workers(self) -> int:
        caps = [self.generator.endpoint.concurrency]
        if self.prompter is not None:
            caps.append(self.prompter.endpoint.concurrency)
        return min(caps)

    def run(self, manifest: Manifest) -> AblationSummary:
        """Run the ablation and summarize it.

        Raises:
            ValueError: if a with_prompt run has no prompter client.
            AblationRunError: if no (image, condition) pair succeeded.
        """
        if Condition.WITH_PROMPT in manifest.conditions and self.prompter is None:
            raise ValueError("with_prompt condition requires a prompter client")
        seeds = derive_seeds(manifest.master_seed, [e.id for e in manifest.entries])
        logger.info(
            "Running ablation: %d image(s) x %d condition(s), %d worker(s)",
            len(manifest.entries), len(manifest.conditions), self.max_workers,
        )
        with ThreadPoolExecutor(max_workers=self.max_workers, thread_name_prefix="ablation") as pool:
            outcomes = list(pool.map(lambda e: self._run_image(manifest, e, seeds[e.id]), manifest.entries))

        records = [r for o in outcomes for r in o.records]
        failures = [f for o in outcomes for f in o.failures]
        if not records:
            raise AblationRunError("no image produced a record", failures)
        summary = summarize(records, failures)
        logger.info(
            "Ablation finished: %d record(s), %d failure(s)", len(summary.records), len(summary.failures)
        )
        return summary

    def _run_image(self, manifest: Manifest, entry: ManifestEntry, seed: int) -> _ImageOutcome:
        outcome = _ImageOutcome()
        try:
            source = load_image(entry.path)
        except (PromptLoopError, OSError) as exc:
            logger.warning("Skipping image %s: %s", entry.id, exc)
            outcome.failures.append(ImageFailure(image_id=entry.id, error=str(exc)))
            return outcome

        params = manifest.params.model_copy(update={"seed": seed})
        for condition in manifest.conditions:
            try:
                prompts = None
                if condition is Condition.WITH_PROMPT:
                    prompts = self.prompter.request_prompts(source, manifest.instruction)
                generated = self.generator.generate_image(source, prompts, params)
                relative = Path(entry.id) / f"{condition.value}.png"
                save_image(generated, self.out_dir / relative)
                metrics = compare_all(source, generated, self.cfg)
            except (PromptLoopError, OSError) as exc:
                logger.warning("Image %s, condition %s failed: %s", entry.id, condition.value, exc)
                outcome.failures.append(ImageFailure(image_id=entry.id, condition=condition, error=str(exc)))
                continue
            outcome.records.append(
                AblationRecord(
                    image_id=entry.id,
                    condition=condition,
                    prompts=prompts,
                    metrics=metrics,
                    generated_path=relative.as_posix(),
                    seed=seed,
                    psnr_max=self.cfg.psnr_max,
                )
            )
        return outcome


def run_ablation(
    manifest: Manifest,
    prompter: BackendEndpoint | None,
    generator: BackendEndpoint,
    cfg: MetricConfig | None = None,
    out_dir: Path = Path("out"),
) -> AblationSummary:
    """Run the ablation against two service endpoints; ``prompter`` may be None for no_prompt-only runs."""
    prompt_client = PromptClient(prompter) if prompter is not None else None
    engine = AblationEngine(prompt_client, GeneratorClient(generator), out_dir, cfg)
    return engine.run(manifest)


def records_frame(records: list[AblationRecord]) -> pd.DataFrame:
    """One row per record: image_id, condition and the six metric columns."""
    rows = [
        {"image_id": r.image_id, "condition": r.condition.value, **{m.value: r.metrics.value(m) for m in Metric}}
        for r in records
    ]
    return pd.DataFrame(rows, columns=["image_id", "condition", *[m.value for m in Metric]])


def summarize(records: list[AblationRecord], failures: list[ImageFailure] | None = None) -> AblationSummary:
    """Per-condition finite means, with-prompt win counts and non-finite row flags.

    Infinite values never enter a mean; a metric with no finite value in a
    condition has mean ``None``. Wins are counted over images that have both
    conditions.
    """
    frame = records_frame(records)
    finite = frame.replace([np.inf, -np.inf], np.nan)

    means: dict[Condition, dict[Metric, float | None]] = {}
    for condition in Condition:
        subset = finite[finite["condition"] == condition.value]
        if subset.empty:
            continue
        column_means = subset[[m.value for m in Metric]].mean(skipna=True)
        means[condition] = {m: _none_if_nan(column_means[m.value]) for m in Metric}

    by_key = {(r.image_id, r.condition): r for r in records}
    paired = [
        (by_key[(image_id, Condition.WITH_PROMPT)], by_key[(image_id, Condition.NO_PROMPT)])
        for image_id in dict.fromkeys(r.image_id for r in records)
        if (image_id, Condition.WITH_PROMPT) in by_key and (image_id, Condition.NO_PROMPT) in by_key
    ]
    wins = {
        m: sum(1 for with_p, without_p in paired if with_p.metrics.better_than(without_p.metrics, m)) for m in Metric
    }

    nonfinite = [f"{r.image_id}/{r.condition.value}" for r in records if not r.metrics.is_finite()]
    return AblationSummary(
        means=means,
        wins=wins,
        compared_images=len(paired),
        records=list(records),
        failures=list(failures or []),
        nonfinite_rows=nonfinite,
    )


def _none_if_nan(value: float) -> float | None:
    value = float(value)
    return None if math.isnan(value) else value
