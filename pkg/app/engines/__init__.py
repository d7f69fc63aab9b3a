"""Ablation engines: seeding, orchestration, summary and audit."""

from app.engines.ablation import AblationEngine, run_ablation, summarize
from app.engines.audit import cross_check_report
from app.engines.seeds import derive_seeds

__all__ = ["AblationEngine", "cross_check_report", "derive_seeds", "run_ablation", "summarize"]
