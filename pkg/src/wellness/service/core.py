"""Study-protocol enforcement for submissions.

Rules applied, in order, after bearer-token auth and idempotent-replay
lookup: daily submission cap, minimum spacing between sessions, sleep-survey
placement (first accepted submission of the participant's local day, and
only there), then survey completeness. All checks for one participant are
serialized behind a per-participant lock; different participants proceed in
parallel.

A submission's timestamp for day bucketing and spacing is its client-side
session end, the moment the participant submitted.
"""
from __future__ import annotations

import secrets
import threading
import time
import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timedelta, timezone

from .. import surveys
from ..model import (
    VALID,
    SensorSample,
    Submission,
    aggregate_session,
    check_validity,
)
from ..surveys import SessionKind, SurveyResponse
from .config import Experiment, Settings
from .store import Participant, SubmissionStore


class UnknownExperimentError(KeyError):
    pass


@dataclass(frozen=True)
class Rejection(Exception):
    reason: str  # bad_token | incomplete | too_many_today | too_soon | wrong_session_kind
    detail: str = ""
    missing: tuple[str, ...] = ()

    def __str__(self):
        return f"{self.reason}: {self.detail}" if self.detail else self.reason


@dataclass(frozen=True)
class SubmitOutcome:
    submission_id: str
    replay: bool


@dataclass(frozen=True)
class EnvelopeData:
    """A submission envelope after schema validation."""

    idempotency_key: str
    session_kind: SessionKind
    answers: dict[str, surveys.AnswerValue]
    samples: tuple[SensorSample, ...]
    client_session_start_ms: int
    client_session_end_ms: int


def local_day(timestamp_ms: int, experiment: Experiment):
    tz = timezone(timedelta(hours=experiment.utc_offset_hours))
    return datetime.fromtimestamp(timestamp_ms / 1000.0, tz=tz).date()


class IngestService:
    """The server side of the study: registration, submission, export."""

    def __init__(self, settings: Settings):
        self.settings = settings
        self.store = SubmissionStore(settings.data_dir)
        self.bank = surveys.load_bank()
        self._participant_locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def experiment(self, experiment_id: str) -> Experiment:
        try:
            return self.settings.experiments[experiment_id]
        except KeyError:
            raise UnknownExperimentError(experiment_id) from None

    def register_participant(self, experiment_id: str) -> Participant:
        self.experiment(experiment_id)
        participant = Participant(
            participant_id=f"p-{uuid.uuid4().hex[:12]}",
            experiment_id=experiment_id,
            auth_token=secrets.token_hex(16),  # 128-bit bearer secret
            registered_at_ms=int(time.time() * 1000),
        )
        self.store.add_participant(participant)  # persisted before returning
        return participant

    def _lock_for(self, participant_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._participant_locks.setdefault(participant_id, threading.Lock())

    def submit(self, token: str, envelope: EnvelopeData) -> SubmitOutcome:
        participant = self.store.participant_by_token(token)
        if participant is None:
            raise Rejection("bad_token", "unknown or expired bearer token")
        experiment = self.experiment(participant.experiment_id)

        with self._lock_for(participant.participant_id):
            existing = self.store.submission_id_for_key(
                participant.participant_id, envelope.idempotency_key
            )
            if existing is not None:
                return SubmitOutcome(submission_id=existing, replay=True)

            end_ms = envelope.client_session_end_ms
            accepted_ends = self.store.accepted_session_ends(
                participant.participant_id
            )
            today = local_day(end_ms, experiment)
            todays = [e for e in accepted_ends if local_day(e, experiment) == today]
            if len(todays) >= experiment.max_submissions_per_day:
                raise Rejection(
                    "too_many_today",
                    f"already {len(todays)} accepted submissions on {today}",
                )
            gap_ms = int(experiment.min_gap_hours * 3_600_000)
            nearest = min((abs(end_ms - e) for e in accepted_ends), default=None)
            if nearest is not None and nearest < gap_ms:
                raise Rejection(
                    "too_soon",
                    f"submissions must be {experiment.min_gap_hours:g} hours apart",
                )

            is_first = not todays
            has_psqi = surveys.has_psqi_answers(envelope.answers)
            if is_first and not has_psqi:
                raise Rejection(
                    "wrong_session_kind",
                    "first submission of the day must answer the sleep survey",
                )
            if not is_first and has_psqi:
                raise Rejection(
                    "wrong_session_kind",
                    "sleep survey answers are only accepted on the first "
                    "submission of the day",
                )

            kind = SessionKind.FIRST_OF_DAY if is_first else SessionKind.SUBSEQUENT
            response = SurveyResponse(session_kind=kind, answers=envelope.answers)
            known_ids = {q.id for q in surveys.question_set(kind)}
            unknown = sorted(set(envelope.answers) - known_ids)
            if unknown:
                raise Rejection(
                    "incomplete",
                    "answers reference unknown question ids",
                    missing=tuple(unknown),
                )
            missing = surveys.missing_answers(response)
            if missing:
                raise Rejection(
                    "incomplete", "survey must be answered in full", missing=missing
                )

            submission = self._build_submission(participant, envelope, response)
            self.store.add_submission(submission, envelope.samples)
            return SubmitOutcome(submission_id=submission.submission_id, replay=False)

    def _build_submission(
        self,
        participant: Participant,
        envelope: EnvelopeData,
        response: SurveyResponse,
    ) -> Submission:
        aggregate = aggregate_session(envelope.samples)
        submission = Submission(
            submission_id=f"s-{uuid.uuid4().hex[:16]}",
            participant_id=participant.participant_id,
            experiment_id=participant.experiment_id,
            session_start_ms=envelope.client_session_start_ms,
            session_end_ms=envelope.client_session_end_ms,
            is_first_of_day=response.session_kind is SessionKind.FIRST_OF_DAY,
            response=response,
            aggregate=aggregate,
            validity=VALID,
            question_bank_hash=self.bank.content_hash,
            idempotency_key=envelope.idempotency_key,
        )
        verdict = check_validity(submission, envelope.samples)
        if not verdict.valid:
            submission = replace(submission, validity=verdict)
        return submission

    def export_dataset(self, experiment_id: str, include_invalid: bool):
        self.experiment(experiment_id)
        return self.store.submissions_for(experiment_id, include_invalid)
