"""Questionnaire bank, per-session question selection, validation, scoring."""

from .bank import (
    AnswerKind,
    QuestionBank,
    QuestionDef,
    SessionKind,
    Survey,
    load_bank,
    question_set,
)
from .scoring import (
    REVERSE_SCORED_PSS_IDS,
    AnswerValue,
    Completeness,
    IncompleteResponseError,
    SurveyResponse,
    SurveyScores,
    UnknownQuestionIdError,
    answer_fits,
    has_psqi_answers,
    missing_answers,
    score,
    validate_response,
)

__all__ = [
    "AnswerKind",
    "AnswerValue",
    "Completeness",
    "IncompleteResponseError",
    "QuestionBank",
    "QuestionDef",
    "REVERSE_SCORED_PSS_IDS",
    "SessionKind",
    "Survey",
    "SurveyResponse",
    "SurveyScores",
    "UnknownQuestionIdError",
    "answer_fits",
    "has_psqi_answers",
    "load_bank",
    "missing_answers",
    "question_set",
    "score",
    "validate_response",
]
