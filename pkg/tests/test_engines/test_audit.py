"""Tests for the RMSE/PSNR consistency audit."""

import math

from app.engines import cross_check_report, run_ablation, summarize
from app.ingestion import load_manifest
from app.models.enums import Condition
from app.models.metrics import MetricReport
from tests.reference_tables import means_summary, published_summary, record_from


class TestCrossCheckReport:
    def test_own_run_is_consistent(self, scene_manifest, mock_endpoint, tmp_path):
        summary = run_ablation(load_manifest(scene_manifest), mock_endpoint, mock_endpoint, out_dir=tmp_path)
        assert cross_check_report(summary, tolerance_db=1e-6) == []

    def test_published_tables_pass_at_quarter_db(self):
        assert cross_check_report(published_summary(), tolerance_db=0.25) == []
        assert cross_check_report(means_summary(), tolerance_db=0.25) == []

    def test_published_tables_are_rounded(self):
        assert cross_check_report(published_summary(), tolerance_db=1e-6) != []

    def test_shifted_psnr_is_flagged_once(self):
        summary = published_summary()
        target = summary.records[3]
        shifted = target.metrics.model_copy(update={"psnr": target.metrics.psnr + 1.0})
        records = list(summary.records)
        records[3] = target.model_copy(update={"metrics": MetricReport.model_validate(shifted.model_dump())})
        violations = cross_check_report(summarize(records), tolerance_db=0.25)
        assert len(violations) == 1
        assert violations[0].image_id == target.image_id
        assert violations[0].condition is target.condition
        assert violations[0].deviation_db > 0.75

    def test_identical_images_are_consistent(self):
        perfect = (0.0, math.inf, 1.0, 1.0, 1.0, math.inf)
        summary = summarize([record_from("same", Condition.NO_PROMPT, perfect)])
        assert cross_check_report(summary) == []

    def test_other_peak_is_skipped(self):
        record = record_from("x", Condition.NO_PROMPT, (0.1, 99.0, 0.5, 0.5, 0.5, 10.0))
        summary = summarize([record.model_copy(update={"psnr_max": 255.0})])
        assert cross_check_report(summary) == []
