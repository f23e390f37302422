"""HTTP JSON API: sessions, trials, guesses, analysis snapshots.

Endpoints:
    POST /sessions
    GET  /sessions/{session_id}/trial
    POST /sessions/{session_id}/trials/{trial_id}/guess
    GET  /analysis

Every error body is the same envelope: {"error": code, "detail": text}.
Trial payloads never carry the hidden answer; for types 2 and 3 they never
say which word is the original. The answer appears only in the guess
verdict.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .analysis import result_summary, run_analysis
from .engine import GameEngine
from .errors import (
    AlreadyAnswered, ClozelabError, CorpusEmpty, MalformedResponse,
    UnknownSession, UnknownTrial, ValidationFailure,
)
from .subjects import SUBJECT_KINDS
from .trials import Trial

_ERROR_MAP: list[tuple[type, int, str]] = [
    (UnknownSession, 404, "unknown_session"),
    (UnknownTrial, 404, "unknown_trial"),
    (AlreadyAnswered, 409, "already_answered"),
    (MalformedResponse, 400, "malformed_response"),
    (CorpusEmpty, 409, "corpus_empty"),
    (ValidationFailure, 422, "validation_failure"),
]


class CreateSessionRequest(BaseModel):
    subject: str = "human"
    subject_id: str | None = None
    seed: int | None = None
    type_mix: list[float] | None = None


class GuessRequest(BaseModel):
    response: str | None = None
    choice: int | None = None


def trial_view(trial: Trial, text: str) -> dict:
    """The exact payload next_trial serves; holds no answer and no labeling."""
    view: dict = {
        "trial_id": trial.id,
        "trial_type": trial.trial_type,
        "text": text,
    }
    if trial.trial_type == 2:
        view["shown_word"] = trial.shown_word
    elif trial.trial_type == 3:
        view["candidates"] = list(trial.candidates)
    return view


def create_app(engine: GameEngine) -> FastAPI:
    app = FastAPI(title="clozelab", docs_url=None, redoc_url=None)
    app.state.engine = engine

    @app.exception_handler(ClozelabError)
    async def domain_error(request: Request, exc: ClozelabError):
        for klass, status, code in _ERROR_MAP:
            if isinstance(exc, klass):
                return JSONResponse(
                    status_code=status,
                    content={"error": code, "detail": str(exc)},
                )
        return JSONResponse(
            status_code=500, content={"error": "internal", "detail": str(exc)},
        )

    @app.exception_handler(RequestValidationError)
    async def body_error(request: Request, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        path = ".".join(str(p) for p in first.get("loc", ()))
        detail = f"{path}: {first.get('msg', 'invalid')}" if path else "invalid body"
        return JSONResponse(
            status_code=422,
            content={"error": "validation_failure", "detail": detail},
        )

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionRequest):
        if body.subject not in SUBJECT_KINDS:
            raise ValidationFailure(f"subject: unknown kind {body.subject!r}")
        mix = tuple(body.type_mix) if body.type_mix is not None else None
        session = engine.create_session(
            body.subject, subject_id=body.subject_id, seed=body.seed, type_mix=mix,
        )
        return {
            "session_id": session.session_id,
            "subject_id": session.subject_id,
            "type_mix": list(session.type_mix),
        }

    @app.get("/sessions/{session_id}/trial")
    def next_trial(session_id: str):
        trial = engine.next_trial(session_id)
        return trial_view(trial, engine.render(trial))

    @app.post("/sessions/{session_id}/trials/{trial_id}/guess")
    def submit_guess(session_id: str, trial_id: str, body: GuessRequest):
        if (body.response is None) == (body.choice is None):
            raise MalformedResponse("provide exactly one of response/choice")
        answer = body.response if body.response is not None else body.choice
        return engine.submit_guess(session_id, trial_id, answer)

    @app.get("/analysis")
    def analysis(
        unit: str = "chars",
        kind: str = "all",
        trial_type: str = "1",
        z: float | None = None,
        fit_min: int | None = None,
        fit_max: int | None = None,
        min_bucket_trials: int | None = None,
    ):
        if unit not in ("chars", "syllables"):
            raise ValidationFailure("unit: must be chars or syllables")
        if kind not in ("all", "poetry", "prose"):
            raise ValidationFailure("kind: must be all, poetry or prose")
        if trial_type not in ("1", "2", "3", "all"):
            raise ValidationFailure("trial_type: must be 1, 2, 3 or all")
        config = engine.config
        fit_range = config.fit_range(unit)
        if fit_min is not None and fit_max is not None:
            fit_range = (fit_min, fit_max)
        with engine.lock:
            result = run_analysis(
                engine.state,
                unit=unit,
                kind=kind,
                trial_type=None if trial_type == "all" else int(trial_type),
                z=z if z is not None else config.z,
                fit_range=fit_range,
                min_bucket_trials=(
                    min_bucket_trials if min_bucket_trials is not None
                    else config.min_bucket_trials
                ),
                config=config,
            )
        return result_summary(result)

    return app
