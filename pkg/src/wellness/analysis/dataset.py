"""Dataset loading and preparation for the report builders.

A dataset is a submissions journal (or a service export, same format).
Preparation partitions it into analyzable and rejected submissions using the
stored verdicts, scores every analyzable response, and exposes the aligned
columns the correlation tables consume. Passing ``revalidate=True`` recomputes
the verdicts from the raw sample journal instead of trusting the stored ones.
"""
from __future__ import annotations

import urllib.request
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence

from ..journal import parse_submissions, samples_from_line
from ..model import (
    ReasonKind,
    RejectedSubmission,
    SensorSample,
    Submission,
    check_validity,
    filter_dataset,
)
from ..surveys import SurveyScores, score

SURVEY_COLUMNS = ("people", "psqi", "pss", "k10")


class InsufficientDataError(ValueError):
    pass


@dataclass(frozen=True)
class ScoredSubmission:
    submission: Submission
    scores: SurveyScores

    def survey_value(self, column: str) -> float | None:
        value = getattr(self.scores, column)
        return None if value is None else float(value)

    def variable_value(self, variable: str) -> float:
        return self.submission.aggregate.value(variable)


@dataclass(frozen=True)
class PreparedDataset:
    rows: tuple[ScoredSubmission, ...]
    rejected: tuple[RejectedSubmission, ...]
    include_invalid: bool

    @property
    def n(self) -> int:
        return len(self.rows)

    def rejection_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for rejected in self.rejected:
            label = rejected.reason.kind.value
            if rejected.reason.variable:
                label = f"{label}({rejected.reason.variable})"
            counts[label] = counts.get(label, 0) + 1
        return counts

    def paired_columns(
        self, a: str, b: str
    ) -> tuple[list[float], list[float]]:
        """Aligned value lists for two columns with pairwise deletion.

        Column names are survey columns (people, psqi, pss, k10) or
        environmental variables. Rows missing either side (psqi on
        subsequent-session rows) drop out, which is what shrinks n for
        psqi-involving cells.
        """
        xs: list[float] = []
        ys: list[float] = []
        for row in self.rows:
            va = self._column_value(row, a)
            vb = self._column_value(row, b)
            if va is None or vb is None:
                continue
            xs.append(va)
            ys.append(vb)
        return xs, ys

    @staticmethod
    def _column_value(row: ScoredSubmission, column: str) -> float | None:
        if column in SURVEY_COLUMNS:
            return row.survey_value(column)
        return row.variable_value(column)


def read_journal(path: str | Path) -> list[Submission]:
    text = Path(path).read_text(encoding="utf-8")
    return parse_submissions(text.splitlines())


def fetch_export(url: str) -> list[Submission]:
    with urllib.request.urlopen(url) as response:
        text = response.read().decode("utf-8")
    return parse_submissions(text.splitlines())


def load_submissions(source: str | Path) -> list[Submission]:
    source_str = str(source)
    if source_str.startswith(("http://", "https://")):
        return fetch_export(source_str)
    return read_journal(source)


def read_samples_journal(path: str | Path) -> dict[str, list[SensorSample]]:
    by_id: dict[str, list[SensorSample]] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            submission_id, samples = samples_from_line(line)
            by_id[submission_id] = samples
    return by_id


def revalidate_submissions(
    submissions: Sequence[Submission],
    samples_by_id: dict[str, list[SensorSample]],
) -> list[Submission]:
    """Recompute every verdict from raw streams, replacing the stored ones."""
    out = []
    for submission in submissions:
        samples = samples_by_id.get(submission.submission_id)
        if samples is None:
            raise ValueError(
                f"no raw samples stored for {submission.submission_id}; "
                "cannot revalidate"
            )
        out.append(replace(submission, validity=check_validity(submission, samples)))
    return out


def prepare(
    submissions: Iterable[Submission],
    include_invalid: bool = False,
    experiment_id: str | None = None,
) -> PreparedDataset:
    """Filter, score, and column-align a raw submission list.

    With ``include_invalid`` the invalid-but-scoreable submissions join the
    analysis rows (their rejection is still reported); duplicates never do.
    """
    selected = [
        s for s in submissions
        if experiment_id is None or s.experiment_id == experiment_id
    ]
    valid, rejected = filter_dataset(selected)
    if include_invalid:
        # keep input order; duplicates stay out even when invalid rows join
        excluded = {
            id(r.submission) for r in rejected
            if r.reason.kind is ReasonKind.DUPLICATE_SUBMISSION
        }
        analyzable = [s for s in selected if id(s) not in excluded]
    else:
        analyzable = list(valid)
    rows = []
    for submission in analyzable:
        try:
            rows.append(
                ScoredSubmission(submission, score(submission.response))
            )
        except Exception:
            # an incomplete stored response cannot be scored; skip it
            continue
    return PreparedDataset(
        rows=tuple(rows), rejected=tuple(rejected), include_invalid=include_invalid
    )
