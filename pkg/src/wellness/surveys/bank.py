"""Question bank: loading, hashing, and per-session question selection.

The bank ships as a versioned JSON data file next to this module. Its
SHA-256 content hash is embedded in every stored submission so datasets
remain self-describing even if the bank evolves.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources


class Survey(str, Enum):
    PSQI = "psqi"
    PSS = "pss"
    K10 = "k10"
    PEOPLE = "people"


class AnswerKind(str, Enum):
    YES_NO = "yes_no"
    TIME_SLOT = "time_slot"      # 30-minute bins, 8:00pm through 8:00am
    HOUR_BIN = "hour_bin"        # 1-hour bins, "0-1 hour" through "12+ hours"
    RATING = "rating"            # 1..5
    NON_NEGATIVE_INT = "non_negative_int"


class SessionKind(str, Enum):
    FIRST_OF_DAY = "first_of_day"
    SUBSEQUENT = "subsequent"


@dataclass(frozen=True)
class QuestionDef:
    id: str
    survey: Survey
    text: str
    answer_kind: AnswerKind
    order: int


class QuestionBank:
    """Immutable set of questions loaded from the versioned data file."""

    def __init__(self, version: int, content_hash: str,
                 questions: tuple[QuestionDef, ...],
                 time_slot_labels: tuple[str, ...],
                 hour_bin_labels: tuple[str, ...]):
        self.version = version
        self.content_hash = content_hash
        self.questions = questions
        self.time_slot_labels = time_slot_labels
        self.hour_bin_labels = hour_bin_labels
        self._by_id = {q.id: q for q in questions}

    def by_id(self, question_id: str) -> QuestionDef:
        return self._by_id[question_id]

    def __contains__(self, question_id: str) -> bool:
        return question_id in self._by_id

    def survey_ids(self, survey: Survey) -> tuple[str, ...]:
        return tuple(q.id for q in self.questions if q.survey is survey)


def _bank_bytes() -> bytes:
    return resources.files(__package__).joinpath("questions.json").read_bytes()


@lru_cache(maxsize=1)
def load_bank() -> QuestionBank:
    raw = _bank_bytes()
    data = json.loads(raw)
    questions = tuple(
        QuestionDef(
            id=q["id"],
            survey=Survey(q["survey"]),
            text=q["text"],
            answer_kind=AnswerKind(q["answer_kind"]),
            order=q["order"],
        )
        for q in data["questions"]
    )
    ids = [q.id for q in questions]
    if len(set(ids)) != len(ids):
        raise ValueError("question bank contains duplicate ids")
    return QuestionBank(
        version=data["version"],
        content_hash=hashlib.sha256(raw).hexdigest(),
        questions=questions,
        time_slot_labels=tuple(data["time_slot_labels"]),
        hour_bin_labels=tuple(data["hour_bin_labels"]),
    )


def question_set(session_kind: SessionKind) -> list[QuestionDef]:
    """Ordered questions for one session.

    First-of-day sessions lead with the sleep items; every session then asks
    the stress and distress items and closes with the people count. Order
    within a survey follows the bank's declared order.
    """
    bank = load_bank()
    if session_kind is SessionKind.FIRST_OF_DAY:
        surveys = (Survey.PSQI, Survey.PSS, Survey.K10, Survey.PEOPLE)
    else:
        surveys = (Survey.PSS, Survey.K10, Survey.PEOPLE)
    out: list[QuestionDef] = []
    for survey in surveys:
        block = [q for q in bank.questions if q.survey is survey]
        block.sort(key=lambda q: q.order)
        out.extend(block)
    return out
