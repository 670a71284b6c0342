"""Batch analysis: dataset preparation, report tables, renderers, CLI."""

from .cli import AnalysisConfig, run
from .dataset import (
    InsufficientDataError,
    PreparedDataset,
    ScoredSubmission,
    load_submissions,
    prepare,
    read_samples_journal,
    revalidate_submissions,
)
from .reports import (
    Cell,
    Histogram,
    HistogramBin,
    ReportTable,
    build_histogram,
    build_survey_matrix,
    build_variable_survey_table,
)

__all__ = [
    "AnalysisConfig",
    "Cell",
    "Histogram",
    "HistogramBin",
    "InsufficientDataError",
    "PreparedDataset",
    "ReportTable",
    "ScoredSubmission",
    "build_histogram",
    "build_survey_matrix",
    "build_variable_survey_table",
    "load_submissions",
    "prepare",
    "read_samples_journal",
    "revalidate_submissions",
    "run",
]
