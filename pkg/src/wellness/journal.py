"""Canonical line format for stored submissions and raw sample streams.

One submission per line, JSON with a fixed key order, so journals diff
cleanly and round-trip byte-exactly: parsing a line and re-serializing it
yields the identical bytes. The analysis CLI reads the same format the
service writes and exports.
"""
from __future__ import annotations

import json
from typing import Iterable, Sequence

from .model import (
    ReasonKind,
    SensorAggregate,
    SensorSample,
    Submission,
    ValidityReason,
    Verdict,
    VARIABLES,
)
from .surveys import SessionKind, SurveyResponse, question_set


def _ordered_answers(response: SurveyResponse) -> dict:
    """Answers keyed in question-set order; unknown ids follow, sorted."""
    ordered = {}
    for question in question_set(response.session_kind):
        if question.id in response.answers:
            ordered[question.id] = response.answers[question.id]
    for extra in sorted(set(response.answers) - set(ordered)):
        ordered[extra] = response.answers[extra]
    return ordered


def submission_to_record(submission: Submission) -> dict:
    aggregate = submission.aggregate
    reason = submission.validity.reason
    return {
        "submission_id": submission.submission_id,
        "participant_id": submission.participant_id,
        "experiment_id": submission.experiment_id,
        "session_start_ms": submission.session_start_ms,
        "session_end_ms": submission.session_end_ms,
        "is_first_of_day": submission.is_first_of_day,
        "question_bank_hash": submission.question_bank_hash,
        "answers": _ordered_answers(submission.response),
        "aggregate": {
            **{v: aggregate.value(v) for v in VARIABLES},
            "sample_count": aggregate.sample_count,
        },
        "validity": "valid" if submission.validity.valid else "invalid",
        "invalid_reason": None if reason is None else {
            "kind": reason.kind.value,
            "variable": reason.variable,
        },
        "idempotency_key": submission.idempotency_key,
    }


def submission_to_line(submission: Submission) -> str:
    return json.dumps(submission_to_record(submission), separators=(",", ":"))


def submission_from_record(record: dict) -> Submission:
    reason_rec = record["invalid_reason"]
    verdict = Verdict(
        valid=record["validity"] == "valid",
        reason=None if reason_rec is None else ValidityReason(
            kind=ReasonKind(reason_rec["kind"]),
            variable=reason_rec["variable"],
        ),
    )
    kind = (
        SessionKind.FIRST_OF_DAY
        if record["is_first_of_day"]
        else SessionKind.SUBSEQUENT
    )
    agg = record["aggregate"]
    return Submission(
        submission_id=record["submission_id"],
        participant_id=record["participant_id"],
        experiment_id=record["experiment_id"],
        session_start_ms=record["session_start_ms"],
        session_end_ms=record["session_end_ms"],
        is_first_of_day=record["is_first_of_day"],
        response=SurveyResponse(session_kind=kind, answers=record["answers"]),
        aggregate=SensorAggregate(
            sample_count=agg["sample_count"],
            **{v: agg[v] for v in VARIABLES},
        ),
        validity=verdict,
        question_bank_hash=record["question_bank_hash"],
        idempotency_key=record["idempotency_key"],
    )


def submission_from_line(line: str) -> Submission:
    return submission_from_record(json.loads(line))


def parse_submissions(lines: Iterable[str]) -> list[Submission]:
    return [submission_from_line(line) for line in lines if line.strip()]


def samples_to_line(submission_id: str, samples: Sequence[SensorSample]) -> str:
    record = {
        "submission_id": submission_id,
        "samples": [
            [s.seq, s.timestamp_ms, s.temperature, s.humidity, s.pressure,
             s.luminosity, s.audio]
            for s in samples
        ],
    }
    return json.dumps(record, separators=(",", ":"))


def samples_from_line(line: str) -> tuple[str, list[SensorSample]]:
    record = json.loads(line)
    samples = [
        SensorSample(
            seq=row[0], timestamp_ms=row[1], temperature=row[2], humidity=row[3],
            pressure=row[4], luminosity=row[5], audio=row[6],
        )
        for row in record["samples"]
    ]
    return record["submission_id"], samples
