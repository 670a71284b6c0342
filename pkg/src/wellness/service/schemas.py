"""Request/response bodies for the ingestion API."""
from __future__ import annotations

from typing import Literal, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from ..model import SensorSample
from ..surveys import SessionKind
from .core import EnvelopeData


class RegisterRequest(BaseModel):
    experiment_id: str


class RegisterResponse(BaseModel):
    participant_id: str
    auth_token: str


class SampleIn(BaseModel):
    seq: int
    timestamp_ms: int
    temperature: float
    humidity: float = Field(ge=0, le=100)
    pressure: float
    luminosity: float = Field(ge=0)
    audio: float = Field(ge=0)

    def to_sample(self) -> SensorSample:
        return SensorSample(**self.model_dump())


class ResponseIn(BaseModel):
    session_kind: Literal["first_of_day", "subsequent"]
    answers: dict[str, Union[int, str]]


class EnvelopeIn(BaseModel):
    idempotency_key: str = Field(min_length=1)
    response: ResponseIn
    samples: list[SampleIn] = Field(min_length=1)
    client_session_start_ms: int
    client_session_end_ms: int

    @field_validator("samples")
    @classmethod
    def _samples_ordered(cls, samples: list[SampleIn]) -> list[SampleIn]:
        for earlier, later in zip(samples, samples[1:]):
            if later.seq <= earlier.seq:
                raise ValueError("sample seq must strictly increase")
        return samples

    @model_validator(mode="after")
    def _window_ordered(self):
        if self.client_session_start_ms >= self.client_session_end_ms:
            raise ValueError("session start must precede session end")
        return self

    def to_envelope(self) -> EnvelopeData:
        return EnvelopeData(
            idempotency_key=self.idempotency_key,
            session_kind=SessionKind(self.response.session_kind),
            answers=dict(self.response.answers),
            samples=tuple(s.to_sample() for s in self.samples),
            client_session_start_ms=self.client_session_start_ms,
            client_session_end_ms=self.client_session_end_ms,
        )


class SubmitResponse(BaseModel):
    submission_id: str


class RejectionResponse(BaseModel):
    reason: str
    detail: str = ""
    missing_question_ids: list[str] = []


class QuestionOut(BaseModel):
    id: str
    survey: str
    text: str
    answer_kind: str
    order: int


class QuestionBankResponse(BaseModel):
    version: int
    content_hash: str
    time_slot_labels: list[str]
    hour_bin_labels: list[str]
    questions: list[QuestionOut]


class SnapshotResponse(BaseModel):
    seq: int
    timestamp_ms: int
    temperature: float
    humidity: float
    pressure: float
    luminosity: float
    audio: float
