"""Domain model: sensor samples, per-session aggregation, validity screening.

Every survey session carries a stream of environmental readings. Before any
statistics run, each session is reduced to per-variable means and screened:
an all-zero stream is the dying-battery symptom, and aggregates outside the
plausible physical envelope are treated as sensor faults. The range table is
a stand-in for a judgement call the original study never spelled out; see
the README for the exact bounds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .surveys import SurveyResponse, has_psqi_answers, missing_answers

VARIABLES = ("temperature", "humidity", "pressure", "luminosity", "audio")

# Inclusive physical envelopes per variable. Used both to screen aggregates
# and to clamp emulated readings.
PHYSICAL_RANGES: dict[str, tuple[float, float]] = {
    "temperature": (-40.0, 85.0),     # deg C
    "humidity": (0.0, 100.0),         # %RH
    "pressure": (300.0, 1100.0),      # hPa
    "luminosity": (0.0, 200_000.0),   # lux
    "audio": (0.0, 140.0),            # dB
}

# Variables whose all-zero stream signals a dying battery. Luminosity is
# exempt: total darkness is a legitimate reading.
ZERO_CHECK_VARIABLES = ("temperature", "humidity", "pressure", "audio")


class EmptySessionError(ValueError):
    """A session stream with no samples cannot be aggregated."""


class NonMonotoneSequenceError(ValueError):
    """Sample sequence numbers must strictly increase within a session."""


@dataclass(frozen=True)
class SensorSample:
    """One timestamped reading of the five environmental variables."""

    seq: int
    timestamp_ms: int
    temperature: float
    humidity: float
    pressure: float
    luminosity: float
    audio: float

    def __post_init__(self):
        if not 0.0 <= self.humidity <= 100.0:
            raise ValueError(f"humidity out of [0, 100]: {self.humidity}")
        if self.luminosity < 0.0:
            raise ValueError(f"negative luminosity: {self.luminosity}")
        if self.audio < 0.0:
            raise ValueError(f"negative audio amplitude: {self.audio}")

    def value(self, variable: str) -> float:
        return getattr(self, variable)


@dataclass(frozen=True)
class SensorAggregate:
    """Arithmetic means of one session's stream, one per variable."""

    temperature: float
    humidity: float
    pressure: float
    luminosity: float
    audio: float
    sample_count: int

    def __post_init__(self):
        if self.sample_count < 1:
            raise ValueError("sample_count must be >= 1")

    def value(self, variable: str) -> float:
        return getattr(self, variable)


class ReasonKind(str, Enum):
    # Declaration order is the detection order: the first failing check wins.
    ZERO_READING_SENSOR = "zero_reading_sensor"
    OUT_OF_PHYSICAL_RANGE = "out_of_physical_range"
    INCOMPLETE_SURVEY = "incomplete_survey"
    DUPLICATE_SUBMISSION = "duplicate_submission"


@dataclass(frozen=True)
class ValidityReason:
    kind: ReasonKind
    variable: str | None = None


@dataclass(frozen=True)
class Verdict:
    valid: bool
    reason: ValidityReason | None = None

    def __post_init__(self):
        if self.valid == (self.reason is not None):
            raise ValueError("invalid verdicts carry exactly one reason")


VALID = Verdict(valid=True)


def invalid(kind: ReasonKind, variable: str | None = None) -> Verdict:
    return Verdict(valid=False, reason=ValidityReason(kind=kind, variable=variable))


@dataclass(frozen=True)
class Submission:
    """The stored unit: one survey session plus its aggregated stream."""

    submission_id: str
    participant_id: str
    experiment_id: str
    session_start_ms: int
    session_end_ms: int
    is_first_of_day: bool
    response: SurveyResponse
    aggregate: SensorAggregate
    validity: Verdict
    question_bank_hash: str
    idempotency_key: str

    def __post_init__(self):
        if self.session_start_ms >= self.session_end_ms:
            raise ValueError("session_start must precede session_end")
        if has_psqi_answers(self.response.answers) != self.is_first_of_day:
            raise ValueError(
                "sleep-survey answers must be present exactly on first-of-day sessions"
            )


def aggregate_session(samples: Sequence[SensorSample]) -> SensorAggregate:
    """Per-variable arithmetic means over one session's ordered stream."""
    if not samples:
        raise EmptySessionError("session contains no samples")
    previous = None
    for sample in samples:
        if previous is not None and sample.seq <= previous:
            raise NonMonotoneSequenceError(
                f"sample seq {sample.seq} does not increase past {previous}"
            )
        previous = sample.seq
    n = len(samples)
    means = {v: math.fsum(s.value(v) for s in samples) / n for v in VARIABLES}
    return SensorAggregate(sample_count=n, **means)


def check_validity(submission: Submission, samples: Sequence[SensorSample]) -> Verdict:
    """Screen one submission; verdicts are values, never exceptions.

    Checks run in a fixed order and the first failure wins: all-zero stream
    per variable, aggregate outside the physical envelope, then survey
    completeness.
    """
    for variable in ZERO_CHECK_VARIABLES:
        if samples and all(s.value(variable) == 0.0 for s in samples):
            return invalid(ReasonKind.ZERO_READING_SENSOR, variable)
    for variable in VARIABLES:
        lo, hi = PHYSICAL_RANGES[variable]
        mean = submission.aggregate.value(variable)
        if not lo <= mean <= hi:
            return invalid(ReasonKind.OUT_OF_PHYSICAL_RANGE, variable)
    if missing_answers(submission.response):
        return invalid(ReasonKind.INCOMPLETE_SURVEY)
    return VALID


@dataclass(frozen=True)
class RejectedSubmission:
    submission: Submission
    reason: ValidityReason


def filter_dataset(
    submissions: Sequence[Submission],
) -> tuple[list[Submission], list[RejectedSubmission]]:
    """Partition a dataset into analyzable and rejected submissions.

    Uses each submission's stored verdict (validity is decided at ingestion
    and never silently recomputed). Additionally rejects any later submission
    re-using an earlier one's (participant, idempotency key) pair, which can
    appear when journals are merged by hand.
    """
    valid: list[Submission] = []
    rejected: list[RejectedSubmission] = []
    seen_keys: set[tuple[str, str]] = set()
    for submission in submissions:
        key = (submission.participant_id, submission.idempotency_key)
        if not submission.validity.valid:
            rejected.append(RejectedSubmission(submission, submission.validity.reason))
        elif key in seen_keys:
            rejected.append(
                RejectedSubmission(
                    submission, ValidityReason(ReasonKind.DUPLICATE_SUBMISSION)
                )
            )
        else:
            valid.append(submission)
        seen_keys.add(key)
    return valid, rejected
