"""Append-only persistence for participants, submissions, and raw streams.

Three sibling journals live in the data directory:

    participants.jsonl   one registered participant per line
    submissions.jsonl    one canonical submission record per line
    samples.jsonl        raw sample stream per submission, keyed by id

Appends are atomic per record (a single buffered write of one line under a
lock); nothing is ever rewritten. On startup the journals are replayed to
rebuild the in-memory indexes, so export order is stable across restarts.
"""
from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence

from ..journal import samples_to_line, submission_from_line, submission_to_line
from ..model import SensorSample, Submission

PARTICIPANTS_FILE = "participants.jsonl"
SUBMISSIONS_FILE = "submissions.jsonl"
SAMPLES_FILE = "samples.jsonl"


class StorageFailureError(RuntimeError):
    """Journal I/O failed; the client may retry with the same idempotency key."""


@dataclass(frozen=True)
class Participant:
    participant_id: str
    experiment_id: str
    auth_token: str
    registered_at_ms: int


class SubmissionStore:
    def __init__(self, data_dir: Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._participants_path = self.data_dir / PARTICIPANTS_FILE
        self._submissions_path = self.data_dir / SUBMISSIONS_FILE
        self._samples_path = self.data_dir / SAMPLES_FILE
        self._write_lock = threading.Lock()
        self._participants: dict[str, Participant] = {}
        self._by_token: dict[str, Participant] = {}
        self._submissions: list[Submission] = []
        self._by_idempotency: dict[tuple[str, str], str] = {}
        self._accepted_ends: dict[str, list[int]] = {}
        self._replay()

    # -- loading ------------------------------------------------------------

    def _replay(self):
        if self._participants_path.exists():
            for line in self._participants_path.read_text().splitlines():
                if line.strip():
                    self._index_participant(Participant(**json.loads(line)))
        if self._submissions_path.exists():
            for line in self._submissions_path.read_text().splitlines():
                if line.strip():
                    self._index_submission(submission_from_line(line))

    def _index_participant(self, participant: Participant):
        self._participants[participant.participant_id] = participant
        self._by_token[participant.auth_token] = participant

    def _index_submission(self, submission: Submission):
        self._submissions.append(submission)
        key = (submission.participant_id, submission.idempotency_key)
        self._by_idempotency[key] = submission.submission_id
        self._accepted_ends.setdefault(submission.participant_id, []).append(
            submission.session_end_ms
        )

    # -- writes -------------------------------------------------------------

    def _append(self, path: Path, line: str):
        try:
            with self._write_lock, path.open("a", encoding="utf-8") as handle:
                handle.write(line + "\n")
        except OSError as exc:
            raise StorageFailureError(str(exc)) from exc

    def add_participant(self, participant: Participant):
        self._append(self._participants_path, json.dumps({
            "participant_id": participant.participant_id,
            "experiment_id": participant.experiment_id,
            "auth_token": participant.auth_token,
            "registered_at_ms": participant.registered_at_ms,
        }, separators=(",", ":")))
        self._index_participant(participant)

    def add_submission(self, submission: Submission, samples: Sequence[SensorSample]):
        # persist before indexing so a failed append is fully retryable
        self._append(self._submissions_path, submission_to_line(submission))
        self._append(
            self._samples_path, samples_to_line(submission.submission_id, samples)
        )
        self._index_submission(submission)

    # -- lookups ------------------------------------------------------------

    def participant_by_token(self, token: str) -> Participant | None:
        return self._by_token.get(token)

    def participant_count(self) -> int:
        return len(self._participants)

    def submission_count(self) -> int:
        return len(self._submissions)

    def submission_id_for_key(self, participant_id: str, key: str) -> str | None:
        return self._by_idempotency.get((participant_id, key))

    def accepted_session_ends(self, participant_id: str) -> list[int]:
        return list(self._accepted_ends.get(participant_id, ()))

    def submissions_for(
        self, experiment_id: str, include_invalid: bool = True
    ) -> Iterator[Submission]:
        for submission in self._submissions:
            if submission.experiment_id != experiment_id:
                continue
            if not include_invalid and not submission.validity.valid:
                continue
            yield submission

    def writable(self) -> bool:
        try:
            with self._write_lock:
                for path in (self._participants_path, self._submissions_path,
                             self._samples_path):
                    with path.open("a", encoding="utf-8"):
                        pass
            return True
        except OSError:
            return False
