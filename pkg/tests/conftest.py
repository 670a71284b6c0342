from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from wellness.surveys import (
    AnswerKind,
    SessionKind,
    SurveyResponse,
    load_bank,
    question_set,
)

# -- answer builders ---------------------------------------------------------

_DEFAULTS = {
    AnswerKind.YES_NO: "No",
    AnswerKind.TIME_SLOT: 4,      # 10-10:30pm
    AnswerKind.HOUR_BIN: 7,       # 7-8 hours
    AnswerKind.RATING: 3,
    AnswerKind.NON_NEGATIVE_INT: 0,
}


def complete_answers(
    session_kind: SessionKind,
    yes_ids: set[str] | None = None,
    people: int = 0,
    overrides: dict | None = None,
) -> dict:
    """A fully answered set: all-No plus the requested Yes answers."""
    answers = {}
    for question in question_set(session_kind):
        value = _DEFAULTS[question.answer_kind]
        if question.answer_kind is AnswerKind.YES_NO and yes_ids and question.id in yes_ids:
            value = "Yes"
        if question.answer_kind is AnswerKind.NON_NEGATIVE_INT:
            value = people
        answers[question.id] = value
    if overrides:
        answers.update(overrides)
    return answers


def complete_response(
    session_kind: SessionKind,
    yes_ids: set[str] | None = None,
    people: int = 0,
    overrides: dict | None = None,
) -> SurveyResponse:
    return SurveyResponse(
        session_kind=session_kind,
        answers=complete_answers(session_kind, yes_ids, people, overrides),
    )


@pytest.fixture(scope="session")
def bank():
    return load_bank()


# -- acceptance reporting ----------------------------------------------------

_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


def record_criterion(name: str):
    """Mark an acceptance criterion as passed (call after its asserts)."""
    _ACCEPTANCE_RESULTS.append((name, "PASS"))


def pytest_runtest_logreport(report):
    if report.when != "call" or not report.failed:
        return
    if "test_acceptance" in report.nodeid:
        name = report.nodeid.rsplit("::", 1)[-1]
        _ACCEPTANCE_RESULTS.append((name, "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in _ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{status}: {name}")
