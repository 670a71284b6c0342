"""HTTP surface of the ingestion service.

Endpoints (all JSON unless noted):

    POST /api/v1/participants                      register in an experiment
    POST /api/v1/submissions                       submit one survey session
    GET  /api/v1/experiments/{id}/dataset          line-delimited export
    GET  /api/v1/questions[?session_kind=...]      question bank + content hash
    GET  /api/v1/sensor/snapshot                   proxied emulator reading
    GET  /api/v1/healthz                           200 while journals writable

Submission rejections map to: 400 incomplete / wrong_session_kind,
401 bad_token, 409 too_many_today / too_soon, 503 storage_failure.
Replaying an accepted idempotency key returns the original submission id.
"""
from __future__ import annotations

from fastapi import Depends, FastAPI, Header, Query
from fastapi.responses import JSONResponse, PlainTextResponse

from ..emulator.stream import EmulatorClient
from ..journal import submission_to_line
from ..surveys import SessionKind, question_set
from .config import Settings
from .core import IngestService, Rejection, UnknownExperimentError
from .schemas import (
    EnvelopeIn,
    QuestionBankResponse,
    QuestionOut,
    RegisterRequest,
    RegisterResponse,
    RejectionResponse,
    SnapshotResponse,
    SubmitResponse,
)
from .store import StorageFailureError

_REJECTION_STATUS = {
    "bad_token": 401,
    "incomplete": 400,
    "wrong_session_kind": 400,
    "too_many_today": 409,
    "too_soon": 409,
}


def _rejection_response(rejection: Rejection) -> JSONResponse:
    body = RejectionResponse(
        reason=rejection.reason,
        detail=rejection.detail,
        missing_question_ids=list(rejection.missing),
    )
    return JSONResponse(
        status_code=_REJECTION_STATUS[rejection.reason],
        content=body.model_dump(),
    )


def create_app(settings: Settings | None = None) -> FastAPI:
    settings = settings or Settings.from_env()
    service = IngestService(settings)
    app = FastAPI(title="wellness ingestion service", version="1.0")
    app.state.service = service

    def get_service() -> IngestService:
        return app.state.service

    @app.post("/api/v1/participants", status_code=201,
              response_model=RegisterResponse)
    def register(body: RegisterRequest, svc: IngestService = Depends(get_service)):
        try:
            participant = svc.register_participant(body.experiment_id)
        except UnknownExperimentError:
            return JSONResponse(
                status_code=404,
                content={"detail": f"unknown experiment {body.experiment_id!r}"},
            )
        return RegisterResponse(
            participant_id=participant.participant_id,
            auth_token=participant.auth_token,
        )

    @app.post("/api/v1/submissions", status_code=201,
              response_model=SubmitResponse)
    def submit(
        body: EnvelopeIn,
        authorization: str = Header(default=""),
        idempotency_key: str | None = Header(default=None),
        svc: IngestService = Depends(get_service),
    ):
        token = ""
        if authorization.startswith("Bearer "):
            token = authorization[len("Bearer "):]
        envelope = body.to_envelope()
        if idempotency_key is not None and idempotency_key != envelope.idempotency_key:
            return JSONResponse(
                status_code=400,
                content={
                    "reason": "incomplete",
                    "detail": "Idempotency-Key header disagrees with envelope",
                    "missing_question_ids": [],
                },
            )
        try:
            outcome = svc.submit(token, envelope)
        except Rejection as rejection:
            return _rejection_response(rejection)
        except StorageFailureError as exc:
            return JSONResponse(
                status_code=503,
                content={"reason": "storage_failure", "detail": str(exc)},
            )
        return SubmitResponse(submission_id=outcome.submission_id)

    @app.get("/api/v1/experiments/{experiment_id}/dataset")
    def export_dataset(
        experiment_id: str,
        include_invalid: bool = Query(default=False),
        svc: IngestService = Depends(get_service),
    ):
        try:
            submissions = list(svc.export_dataset(experiment_id, include_invalid))
        except UnknownExperimentError:
            return JSONResponse(
                status_code=404,
                content={"detail": f"unknown experiment {experiment_id!r}"},
            )
        body = "".join(submission_to_line(s) + "\n" for s in submissions)
        return PlainTextResponse(body, media_type="application/x-ndjson")

    @app.get("/api/v1/questions", response_model=QuestionBankResponse)
    def questions(
        session_kind: str | None = Query(default=None),
        svc: IngestService = Depends(get_service),
    ):
        bank = svc.bank
        if session_kind is None:
            selected = list(bank.questions)
        else:
            selected = question_set(SessionKind(session_kind))
        return QuestionBankResponse(
            version=bank.version,
            content_hash=bank.content_hash,
            time_slot_labels=list(bank.time_slot_labels),
            hour_bin_labels=list(bank.hour_bin_labels),
            questions=[
                QuestionOut(
                    id=q.id, survey=q.survey.value, text=q.text,
                    answer_kind=q.answer_kind.value, order=q.order,
                )
                for q in selected
            ],
        )

    @app.get("/api/v1/sensor/snapshot", response_model=SnapshotResponse)
    def sensor_snapshot(svc: IngestService = Depends(get_service)):
        addr = svc.settings.emulator_addr
        if addr is None:
            return JSONResponse(
                status_code=503, content={"detail": "no sensor emulator configured"}
            )
        try:
            with EmulatorClient(addr[0], addr[1], timeout=2.0) as client:
                sample = client.snapshot()
        except OSError as exc:
            return JSONResponse(
                status_code=503, content={"detail": f"sensor unreachable: {exc}"}
            )
        return SnapshotResponse(
            seq=sample.seq, timestamp_ms=sample.timestamp_ms,
            temperature=sample.temperature, humidity=sample.humidity,
            pressure=sample.pressure, luminosity=sample.luminosity,
            audio=sample.audio,
        )

    @app.get("/api/v1/healthz")
    def healthz(svc: IngestService = Depends(get_service)):
        if not svc.store.writable():
            return JSONResponse(status_code=503, content={"status": "unwritable"})
        return {"status": "ok"}

    return app
