"""`wellness analyze`: batch reports from a journal or service export.

Writes survey_matrix_<method> and variable_survey_<method> tables plus
hist_<variable> files and a summary.txt into the output directory, and
prints the summary. Exit status 0 on success, 2 on unusable input.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from ..model import VARIABLES
from ..stats import Method
from . import render
from .dataset import (
    InsufficientDataError,
    PreparedDataset,
    load_submissions,
    prepare,
    read_samples_journal,
    revalidate_submissions,
)
from .reports import build_histogram, build_survey_matrix, build_variable_survey_table

DEFAULT_BINS = 20


@dataclass
class AnalysisConfig:
    input_source: str
    out_dir: Path
    methods: tuple[Method, ...] = (Method.PEARSON, Method.SPEARMAN, Method.KENDALL)
    experiment_id: str | None = None
    include_invalid: bool = False
    output_format: str = "csv"  # csv | text
    bins: int = DEFAULT_BINS
    revalidate: bool = False
    samples_path: Path | None = None

    def __post_init__(self):
        if not self.methods:
            raise ValueError("at least one correlation method is required")
        if self.output_format not in ("csv", "text"):
            raise ValueError("format must be csv or text")


def _summary_lines(dataset: PreparedDataset) -> list[str]:
    lines = [
        f"analyzable submissions: {dataset.n}",
        f"rejected submissions:   {len(dataset.rejected)}",
    ]
    for label, count in sorted(dataset.rejection_counts().items()):
        lines.append(f"  {label}: {count}")
    return lines


def _load_prepared(config: AnalysisConfig) -> PreparedDataset:
    submissions = load_submissions(config.input_source)
    if config.revalidate:
        samples_path = config.samples_path
        if samples_path is None:
            sibling = Path(config.input_source).parent / "samples.jsonl"
            if not sibling.exists():
                raise ValueError(
                    "revalidation needs a raw samples journal; pass --samples"
                )
            samples_path = sibling
        samples = read_samples_journal(samples_path)
        submissions = revalidate_submissions(submissions, samples)
    return prepare(
        submissions,
        include_invalid=config.include_invalid,
        experiment_id=config.experiment_id,
    )


def run(config: AnalysisConfig) -> int:
    try:
        dataset = _load_prepared(config)
    except (OSError, ValueError) as exc:
        print(f"wellness analyze: {exc}", file=sys.stderr)
        return 2
    summary = _summary_lines(dataset)
    print("\n".join(summary))
    if dataset.n == 0:
        print("wellness analyze: no valid submissions", file=sys.stderr)
        return 2

    config.out_dir.mkdir(parents=True, exist_ok=True)
    extension = "csv" if config.output_format == "csv" else "txt"
    written: list[Path] = []
    notes: list[str] = []
    try:
        variable_table = build_variable_survey_table(dataset, config.methods)
        for method in config.methods:
            matrix = build_survey_matrix(dataset, method)
            if config.output_format == "csv":
                matrix_text = render.render_table_csv(matrix, method)
                variable_text = render.render_table_csv(variable_table, method)
            else:
                matrix_text = render.render_table_text(matrix, method)
                variable_text = render.render_table_text(variable_table, method)
            matrix_path = config.out_dir / f"survey_matrix_{method.value}.{extension}"
            matrix_path.write_text(matrix_text, encoding="utf-8")
            written.append(matrix_path)
            variable_path = (
                config.out_dir / f"variable_survey_{method.value}.{extension}"
            )
            variable_path.write_text(variable_text, encoding="utf-8")
            written.append(variable_path)
            notes.extend(n for n in matrix.footnotes if n not in notes)
        notes.extend(n for n in variable_table.footnotes if n not in notes)
        summary.extend(f"note: {note}" for note in notes)
        for variable in VARIABLES:
            histogram = build_histogram(dataset, variable, config.bins)
            if config.output_format == "csv":
                hist_text = render.render_histogram_csv(histogram)
            else:
                hist_text = render.render_histogram_text(histogram)
            hist_path = config.out_dir / f"hist_{variable}.{extension}"
            hist_path.write_text(hist_text, encoding="utf-8")
            written.append(hist_path)
    except InsufficientDataError as exc:
        print(f"wellness analyze: {exc}", file=sys.stderr)
        return 2

    summary_path = config.out_dir / "summary.txt"
    summary_path.write_text("\n".join(summary) + "\n", encoding="utf-8")
    written.append(summary_path)
    print(f"wrote {len(written)} report files to {config.out_dir}")
    return 0


def add_analyze_arguments(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--input", required=True,
        help="submissions journal, export file, or service dataset URL",
    )
    parser.add_argument("--experiment", default=None, help="experiment id filter")
    parser.add_argument(
        "--methods", default="pearson,spearman,kendall",
        help="comma-separated subset of pearson,spearman,kendall",
    )
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--format", default="csv", choices=("csv", "text"))
    parser.add_argument("--include-invalid", action="store_true")
    parser.add_argument("--bins", type=int, default=DEFAULT_BINS)
    parser.add_argument(
        "--revalidate", action="store_true",
        help="recompute verdicts from the raw samples journal",
    )
    parser.add_argument(
        "--samples", default=None,
        help="raw samples journal (defaults to samples.jsonl beside the input)",
    )


def config_from_args(args: argparse.Namespace) -> AnalysisConfig:
    methods = tuple(
        Method(name.strip()) for name in args.methods.split(",") if name.strip()
    )
    return AnalysisConfig(
        input_source=args.input,
        out_dir=Path(args.out),
        methods=methods,
        experiment_id=args.experiment,
        include_invalid=args.include_invalid,
        output_format=args.format,
        bins=args.bins,
        revalidate=args.revalidate,
        samples_path=Path(args.samples) if args.samples else None,
    )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="wellness analyze")
    add_analyze_arguments(parser)
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except ValueError as exc:
        print(f"wellness analyze: {exc}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":
    raise SystemExit(main())
