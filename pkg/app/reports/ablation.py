"""CSV, markdown and JSON reports for an ablation summary."""

import io
import logging
import math
from dataclasses import dataclass
from pathlib import Path

from jinja2 import Environment, FileSystemLoader

from app.engines.ablation import records_frame
from app.models.ablation import AblationRecord, AblationSummary
from app.models.enums import Condition, Metric, ReportFormat

logger = logging.getLogger(__name__)

TEMPLATE_DIR = Path(__file__).parent / "templates"
CSV_COLUMNS = ["image_id", "condition", *[m.value for m in Metric]]
DECIMALS = {
    Metric.RMSE: 5,
    Metric.PSNR: 4,
    Metric.FSIM: 5,
    Metric.SSIM: 5,
    Metric.UIQ: 5,
    Metric.SRE: 4,
}


def format_metric(metric: Metric, value: float | None) -> str:
    if value is None:
        return "n/a"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.{DECIMALS[metric]}f}"


@dataclass
class TableRow:
    image_id: str
    label: str
    cells: list[str]


def _bolded(metric: Metric, mine: float | None, other: float | None, text: str) -> str:
    if mine is None or other is None:
        return text
    wins = mine > other if metric.higher_is_better else mine < other
    return f"**{text}**" if wins else text


class AblationReportGenerator:
    """Renders an AblationSummary in each report format."""

    def __init__(self) -> None:
        self.env = Environment(
            loader=FileSystemLoader(str(TEMPLATE_DIR)),
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
        )

    def csv(self, summary: AblationSummary) -> str:
        frame = records_frame(summary.records)
        buffer = io.StringIO()
        frame.to_csv(buffer, index=False, columns=CSV_COLUMNS, lineterminator="\n")
        return buffer.getvalue()

    def json(self, summary: AblationSummary) -> str:
        return summary.model_dump_json(indent=2) + "\n"

    def markdown(self, summary: AblationSummary) -> str:
        template = self.env.get_template("ablation.md")
        return template.render(
            metrics=list(Metric),
            aggregate=self.aggregate_rows(summary),
            per_image=self.per_image_rows(summary),
            summary=summary,
        )

    @staticmethod
    def aggregate_rows(summary: AblationSummary) -> list[TableRow]:
        """One row per condition; a mean is bolded when it strictly beats the other condition's."""
        rows = []
        for condition in summary.conditions:
            others = [c for c in summary.conditions if c is not condition]
            cells = []
            for metric in Metric:
                mine = summary.means.get(condition, {}).get(metric)
                other = summary.means.get(others[0], {}).get(metric) if others else None
                cells.append(_bolded(metric, mine, other, format_metric(metric, mine)))
            rows.append(TableRow(image_id="", label=condition.label, cells=cells))
        return rows

    @staticmethod
    def per_image_rows(summary: AblationSummary) -> list[TableRow]:
        """Two sub-rows per image (one per condition present), winners bolded per metric."""
        by_key: dict[tuple[str, Condition], AblationRecord] = {(r.image_id, r.condition): r for r in summary.records}
        rows = []
        for image_id in summary.image_ids:
            present = [c for c in Condition if (image_id, c) in by_key]
            for index, condition in enumerate(present):
                record = by_key[(image_id, condition)]
                rival = next((by_key[(image_id, c)] for c in present if c is not condition), None)
                cells = []
                for metric in Metric:
                    mine = record.metrics.value(metric)
                    other = rival.metrics.value(metric) if rival else None
                    cells.append(_bolded(metric, mine, other, format_metric(metric, mine)))
                rows.append(TableRow(image_id=image_id if index == 0 else "", label=condition.label, cells=cells))
        return rows


def emit_report(summary: AblationSummary, report_format: ReportFormat) -> bytes:
    """Serialize ``summary`` as CSV, markdown or JSON (UTF-8 bytes)."""
    if not summary.records:
        raise ValueError("cannot emit a report for an empty summary")
    generator = AblationReportGenerator()
    render = {
        ReportFormat.CSV: generator.csv,
        ReportFormat.MARKDOWN: generator.markdown,
        ReportFormat.JSON: generator.json,
    }[ReportFormat(report_format)]
    return render(summary).encode("utf-8")


def write_reports(
    summary: AblationSummary,
    out_dir: Path,
    formats: tuple[ReportFormat, ...] = tuple(ReportFormat),
) -> list[Path]:
    """Write ``report.<ext>`` for each format into ``out_dir``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for report_format in formats:
        path = out_dir / f"report.{report_format.extension}"
        path.write_bytes(emit_report(summary, report_format))
        logger.info("Wrote %s", path)
        written.append(path)
    return written
