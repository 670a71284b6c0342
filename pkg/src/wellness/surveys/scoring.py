"""Response validation and integer scoring for the three questionnaires.

Scoring is deliberately simple: one point per "Yes" on a yes/no item. The
sleep questionnaire's intake items (bed time, hours in bed, hours of sleep,
overall rating) are stored as covariates but never contribute to the score.

Note on the stress scale: four of its items are positively phrased
("Do you feel confident...", "...things are going your way?",
"...able to control the irritations...", "...on top of things?").
By default a "Yes" on those still counts one point, mirroring the plain
one-point-per-Yes rule. Pass ``reverse_positive_pss=True`` to score those
four items on "No" instead, for sensitivity analysis only.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .bank import AnswerKind, QuestionDef, SessionKind, Survey, load_bank, question_set

AnswerValue = Union[str, int]

# Items scored in reverse when the sensitivity switch is on.
REVERSE_SCORED_PSS_IDS = frozenset({
    "pss_confident_handle",
    "pss_going_your_way",
    "pss_control_irritations",
    "pss_on_top_of_things",
})


class UnknownQuestionIdError(KeyError):
    """An answer references a question id outside the session's set."""


class IncompleteResponseError(ValueError):
    """score() was called on a response that does not validate as complete."""


@dataclass(frozen=True)
class SurveyResponse:
    session_kind: SessionKind
    answers: Mapping[str, AnswerValue]


@dataclass(frozen=True)
class SurveyScores:
    pss: int
    k10: int
    people: int
    psqi: int | None = None  # absent on subsequent sessions


@dataclass(frozen=True)
class Completeness:
    complete: bool
    missing: tuple[str, ...] = ()  # missing or ill-typed question ids


def answer_fits(question: QuestionDef, value: AnswerValue) -> bool:
    """Whether a raw answer value lies in the question's answer domain."""
    bank = load_bank()
    kind = question.answer_kind
    if kind is AnswerKind.YES_NO:
        return value in ("Yes", "No")
    if isinstance(value, bool) or not isinstance(value, int):
        return False
    if kind is AnswerKind.TIME_SLOT:
        return 0 <= value < len(bank.time_slot_labels)
    if kind is AnswerKind.HOUR_BIN:
        return 0 <= value < len(bank.hour_bin_labels)
    if kind is AnswerKind.RATING:
        return 1 <= value <= 5
    if kind is AnswerKind.NON_NEGATIVE_INT:
        return value >= 0
    return False


def missing_answers(response: SurveyResponse) -> tuple[str, ...]:
    """Ids in the session's question set lacking a well-typed answer.

    Unknown extra ids are ignored here; use validate_response() to reject
    them.
    """
    missing = []
    for question in question_set(response.session_kind):
        value = response.answers.get(question.id)
        if value is None or not answer_fits(question, value):
            missing.append(question.id)
    return tuple(missing)


def validate_response(response: SurveyResponse) -> Completeness:
    """Check a response against its session's question set.

    Raises UnknownQuestionIdError when the answers map references ids that
    are not part of the set.
    """
    expected = {q.id for q in question_set(response.session_kind)}
    unknown = sorted(set(response.answers) - expected)
    if unknown:
        raise UnknownQuestionIdError(", ".join(unknown))
    missing = missing_answers(response)
    return Completeness(complete=not missing, missing=missing)


def score(response: SurveyResponse, reverse_positive_pss: bool = False) -> SurveyScores:
    """Integer scores for one complete response.

    One point per "Yes" on each yes/no item of its questionnaire; the people
    count passes through verbatim. The sleep score exists only for a
    first-of-day session.
    """
    if missing_answers(response):
        raise IncompleteResponseError(
            "response is incomplete; validate before scoring"
        )
    totals = {Survey.PSQI: 0, Survey.PSS: 0, Survey.K10: 0}
    people = 0
    for question in question_set(response.session_kind):
        value = response.answers[question.id]
        if question.answer_kind is AnswerKind.NON_NEGATIVE_INT:
            people = int(value)
            continue
        if question.answer_kind is not AnswerKind.YES_NO:
            continue  # intake covariates never score
        positive = value == "Yes"
        if reverse_positive_pss and question.id in REVERSE_SCORED_PSS_IDS:
            positive = not positive
        if positive:
            totals[question.survey] += 1
    psqi = totals[Survey.PSQI] if response.session_kind is SessionKind.FIRST_OF_DAY else None
    return SurveyScores(pss=totals[Survey.PSS], k10=totals[Survey.K10],
                        people=people, psqi=psqi)


def has_psqi_answers(answers: Mapping[str, AnswerValue]) -> bool:
    bank = load_bank()
    return any(qid in answers for qid in bank.survey_ids(Survey.PSQI))
