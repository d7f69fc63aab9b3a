"""End-to-end ablation runs against the mock services."""

import math

import pytest

from app.clients import GeneratorClient, PromptClient
from app.engines import AblationEngine, derive_seeds, run_ablation, summarize
from app.exceptions import AblationRunError
from app.imaging.codec import load_image
from app.ingestion import load_manifest
from app.models.ablation import Manifest
from app.models.enums import Condition, Metric
from app.models.generation import BackendEndpoint
from app.reports import write_reports
from tests.reference_tables import record_from, report_from


class TestFourSceneRun:
    def test_prompted_condition_wins_everywhere(self, scene_manifest, mock_endpoint, tmp_path):
        manifest = load_manifest(scene_manifest)
        summary = run_ablation(manifest, mock_endpoint, mock_endpoint, out_dir=tmp_path / "out")

        assert len(summary.records) == 8
        assert summary.compared_images == 4
        assert not summary.partial
        assert summary.wins == {m: 4 for m in Metric}
        for metric in Metric:
            with_mean = summary.means[Condition.WITH_PROMPT][metric]
            without_mean = summary.means[Condition.NO_PROMPT][metric]
            assert with_mean > without_mean if metric.higher_is_better else with_mean < without_mean

    def test_records_are_in_manifest_order(self, scene_manifest, mock_endpoint, tmp_path):
        summary = run_ablation(load_manifest(scene_manifest), mock_endpoint, mock_endpoint, out_dir=tmp_path)
        assert [(r.image_id, r.condition) for r in summary.records[:2]] == [
            ("dog", Condition.NO_PROMPT),
            ("dog", Condition.WITH_PROMPT),
        ]
        assert summary.image_ids == ["dog", "astronaut", "plane", "skyscraper"]

    def test_generated_images_are_written(self, scene_manifest, mock_endpoint, tmp_path):
        out_dir = tmp_path / "out"
        summary = run_ablation(load_manifest(scene_manifest), mock_endpoint, mock_endpoint, out_dir=out_dir)
        for record in summary.records:
            assert record.generated_path == f"{record.image_id}/{record.condition.value}.png"
            assert load_image(out_dir / record.generated_path).shape == (64, 64, 3)

    def test_conditions_share_the_image_seed(self, scene_manifest, mock_endpoint, tmp_path):
        manifest = load_manifest(scene_manifest)
        summary = run_ablation(manifest, mock_endpoint, mock_endpoint, out_dir=tmp_path)
        seeds = derive_seeds(1234, ["dog", "astronaut", "plane", "skyscraper"])
        for record in summary.records:
            assert record.seed == seeds[record.image_id]

    def test_rerun_gives_identical_csv(self, scene_manifest, mock_endpoint, tmp_path):
        manifest = load_manifest(scene_manifest)
        first = run_ablation(manifest, mock_endpoint, mock_endpoint, out_dir=tmp_path / "a")
        second = run_ablation(manifest, mock_endpoint, mock_endpoint, out_dir=tmp_path / "b")
        write_reports(first, tmp_path / "a")
        write_reports(second, tmp_path / "b")
        assert (tmp_path / "a" / "report.csv").read_bytes() == (tmp_path / "b" / "report.csv").read_bytes()

    def test_no_prompt_only_needs_no_prompter(self, scene_manifest, mock_endpoint, tmp_path):
        manifest = load_manifest(scene_manifest).model_copy(update={"conditions": [Condition.NO_PROMPT]})
        summary = run_ablation(manifest, None, mock_endpoint, out_dir=tmp_path)
        assert len(summary.records) == 4
        assert summary.compared_images == 0
        assert summary.wins == {m: 0 for m in Metric}
        assert Condition.WITH_PROMPT not in summary.means

    def test_with_prompt_requires_prompter(self, scene_manifest, mock_endpoint, tmp_path):
        engine = AblationEngine(None, GeneratorClient(mock_endpoint), tmp_path)
        with pytest.raises(ValueError):
            engine.run(load_manifest(scene_manifest))


class TestFailures:
    def test_corrupt_image_gives_partial_run(self, scene_manifest, mock_endpoint, tmp_path):
        (scene_manifest.parent / "inputs" / "plane.png").write_bytes(b"not a png")
        summary = run_ablation(load_manifest(scene_manifest), mock_endpoint, mock_endpoint, out_dir=tmp_path)
        assert summary.partial
        assert len(summary.records) == 6
        assert [f.image_id for f in summary.failures] == ["plane"]
        assert summary.failures[0].condition is None
        assert summary.compared_images == 3

    def test_missing_file_recorded_when_not_checked(self, scene_manifest, mock_endpoint, tmp_path):
        manifest = load_manifest(scene_manifest)
        (scene_manifest.parent / "inputs" / "dog.png").unlink()
        summary = run_ablation(manifest, mock_endpoint, mock_endpoint, out_dir=tmp_path)
        assert [f.image_id for f in summary.failures] == ["dog"]
        assert len(summary.records) == 6

    def test_unreachable_generator_fails_the_run(self, scene_manifest, mock_endpoint, tmp_path):
        dead = BackendEndpoint(base_url="http://127.0.0.1:1", timeout=2.0, max_retries=0)
        with pytest.raises(AblationRunError) as exc_info:
            run_ablation(load_manifest(scene_manifest), mock_endpoint, dead, out_dir=tmp_path)
        assert len(exc_info.value.failures) == 8
        assert all(f.condition is not None for f in exc_info.value.failures)

    def test_prompter_failure_keeps_baseline(self, scene_manifest, mock_endpoint, tmp_path):
        dead = BackendEndpoint(base_url="http://127.0.0.1:1", timeout=2.0, max_retries=0)
        engine = AblationEngine(PromptClient(dead), GeneratorClient(mock_endpoint), tmp_path)
        summary = engine.run(load_manifest(scene_manifest))
        assert {r.condition for r in summary.records} == {Condition.NO_PROMPT}
        assert {f.condition for f in summary.failures} == {Condition.WITH_PROMPT}


class TestSummarize:
    def test_infinite_values_stay_out_of_means(self):
        perfect = (0.0, math.inf, 1.0, 1.0, 1.0, math.inf)
        noisy = (0.02, -20 * math.log10(0.02), 0.9, 0.8, 0.7, 30.0)
        summary = summarize([
            record_from("a", Condition.NO_PROMPT, perfect),
            record_from("b", Condition.NO_PROMPT, noisy),
        ])
        means = summary.means[Condition.NO_PROMPT]
        assert means[Metric.RMSE] == pytest.approx(0.01)
        assert means[Metric.PSNR] == pytest.approx(noisy[1])
        assert means[Metric.SRE] == pytest.approx(30.0)
        assert summary.nonfinite_rows == ["a/no_prompt"]

    def test_mean_is_none_without_finite_values(self):
        perfect = (0.0, math.inf, 1.0, 1.0, 1.0, math.inf)
        summary = summarize([record_from("a", Condition.NO_PROMPT, perfect)])
        assert summary.means[Condition.NO_PROMPT][Metric.PSNR] is None
        assert summary.means[Condition.NO_PROMPT][Metric.RMSE] == 0.0

    def test_ties_are_not_wins(self):
        values = (0.02, -20 * math.log10(0.02), 0.9, 0.8, 0.7, 30.0)
        summary = summarize([
            record_from("a", Condition.NO_PROMPT, values),
            record_from("a", Condition.WITH_PROMPT, values),
        ])
        assert summary.compared_images == 1
        assert all(count == 0 for count in summary.wins.values())

    def test_report_better_than(self):
        low = report_from((0.02, 33.9794, 0.3, 0.8, 0.1, 40.0))
        high = report_from((0.01, 40.0, 0.4, 0.9, 0.2, 45.0))
        assert high.better_than(low, Metric.RMSE)
        assert high.better_than(low, Metric.SSIM)
        assert not low.better_than(high, Metric.PSNR)


class TestSeeds:
    def test_deterministic_and_ordered(self):
        first = derive_seeds(99, ["a", "b", "c"])
        assert first == derive_seeds(99, ["a", "b", "c"])
        assert list(first) == ["a", "b", "c"]
        assert all(0 <= s < 2**63 for s in first.values())

    def test_prefix_stable(self):
        assert derive_seeds(5, ["a", "b"])["a"] == derive_seeds(5, ["a", "b", "c"])["a"]

    def test_master_seed_matters(self):
        assert derive_seeds(1, ["a"]) != derive_seeds(2, ["a"])


class TestManifestModel:
    def test_condition_order_is_canonical(self, tmp_path):
        manifest = Manifest.model_validate(
            {"images": [{"id": "x", "path": "x.png"}], "conditions": ["with_prompt", "no_prompt"]}
        )
        assert manifest.conditions == [Condition.NO_PROMPT, Condition.WITH_PROMPT]
