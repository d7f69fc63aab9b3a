"""Report generation for ablation summaries."""

from app.reports.ablation import AblationReportGenerator, emit_report, write_reports

__all__ = ["AblationReportGenerator", "emit_report", "write_reports"]
