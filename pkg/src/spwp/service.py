"""HTTP service exposing the mutation workbench to the browser explorer.

Endpoints (all JSON):

* ``POST /api/session`` — create a session from ``{"sp": ...}``,
  ``{"quiver": ..., "prime": p}`` or ``{"matrix": ..., "prime": p}``
  (optional ``"potential"`` and ``"truncation"``); returns the session state.
* ``GET /api/session/{id}`` — current state.
* ``POST /api/session/{id}/mutate`` — body ``{"vertex": k}``; mutates the
  species with potential at ``k`` and pushes a history entry.
* ``POST /api/session/{id}/undo`` — pops the last history entry.
* ``POST /api/session/{id}/search`` — body ``{"sequence": [...], "budget"?,
  "seed"?, "max_ext"?, "max_cycle_length"?}``; searches for a potential that
  stays non-degenerate along the sequence, starting from the current quiver.
  A successful search pushes a history entry holding the witness (so undo
  restores the pre-search state); a failed search leaves history untouched.
* ``GET /api/health`` — liveness probe.

Errors are always ``{"error": {"code": ..., "message": ...}}``.  History is
bounded (oldest entries fall off); each session is guarded by a lock so
concurrent requests cannot interleave mutations.
"""

from __future__ import annotations

import secrets
import threading
from dataclasses import dataclass, field

from fastapi import Body, FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .algebra import DEFAULT_TRUNCATION, Species
from .io import (
    matrix_from_json,
    matrix_to_json,
    potential_from_json,
    potential_to_json,
    quiver_from_json,
    quiver_to_json,
    search_result_to_json,
    step_to_json,
    swp_from_json,
)
from .mutation import SpeciesWithPotential, StepReport, mutate_step
from .quiver import matrix_to_quiver, quiver_to_matrix
from .search import search_nondegenerate
from .tower import build_tower

__all__ = ["create_app", "HISTORY_LIMIT"]

HISTORY_LIMIT = 256
MAX_BUDGET = 10_000
MAX_SEQUENCE = 64


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


@dataclass
class Entry:
    swp: SpeciesWithPotential
    step: StepReport | None
    search: dict | None


@dataclass
class Session:
    id: str
    entries: list[Entry] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


class MutateBody(BaseModel):
    vertex: int


class SearchBody(BaseModel):
    sequence: list[int]
    budget: int = 100
    seed: int | str = "0"
    max_ext: int = 7
    max_cycle_length: int | None = None


def _swp_from_body(body: dict) -> SpeciesWithPotential:
    if "sp" in body:
        return swp_from_json(body["sp"])
    truncation = int(body.get("truncation", DEFAULT_TRUNCATION))
    if "quiver" in body:
        quiver = quiver_from_json(body["quiver"])
    elif "matrix" in body:
        quiver = matrix_to_quiver(matrix_from_json(body["matrix"]))
    else:
        raise ApiError(400, "invalid-request",
                       "session body needs one of: sp, quiver, matrix")
    prime = body.get("prime")
    if not isinstance(prime, int) or isinstance(prime, bool):
        raise ApiError(400, "invalid-request", "prime (an integer) is required")
    species = Species(quiver, build_tower(prime, quiver.weights))
    if "potential" in body:
        potential = potential_from_json(species, body["potential"])
    else:
        potential = species.zero_element(truncation)
    return SpeciesWithPotential(species, potential)


def _state(session: Session) -> dict:
    entry = session.entries[-1]
    species = entry.swp.species
    quiver = species.quiver
    try:
        matrix = matrix_to_json(quiver_to_matrix(quiver))
    except ValueError:
        matrix = None
    return {
        "id": session.id,
        "prime": species.tower.p,
        "base_degree": species.tower.base_degree,
        "truncation": entry.swp.truncation,
        "vertices": quiver.n,
        "weights": list(quiver.weights),
        "quiver": quiver_to_json(quiver),
        "matrix": matrix,
        "potential": potential_to_json(entry.swp.potential),
        "two_acyclic": quiver.is_2_acyclic(),
        "history": len(session.entries),
        "can_undo": len(session.entries) > 1,
        "last_step": step_to_json(entry.step) if entry.step is not None else None,
        "search": entry.search,
    }


def _push(session: Session, entry: Entry) -> None:
    session.entries.append(entry)
    if len(session.entries) > HISTORY_LIMIT:
        session.entries.pop(0)


def create_app(static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="spwp explorer service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}
    store_lock = threading.Lock()

    @app.exception_handler(ApiError)
    async def on_api_error(request, exc: ApiError):
        return JSONResponse(status_code=exc.status,
                            content={"error": {"code": exc.code,
                                               "message": exc.message}})

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request, exc: RequestValidationError):
        message = "; ".join(
            "%s: %s" % (".".join(str(part) for part in err["loc"]), err["msg"])
            for err in exc.errors())
        return JSONResponse(status_code=422,
                            content={"error": {"code": "invalid-request",
                                               "message": message}})

    def get_session(sid: str) -> Session:
        with store_lock:
            session = sessions.get(sid)
        if session is None:
            raise ApiError(404, "unknown-session", "no session %s" % sid)
        return session

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    @app.post("/api/session")
    def create_session(body: dict = Body(...)):
        try:
            swp = _swp_from_body(body)
        except ValueError as exc:
            raise ApiError(400, "invalid-input", str(exc))
        session = Session(id=secrets.token_hex(8))
        session.entries.append(Entry(swp, None, None))
        with store_lock:
            sessions[session.id] = session
        return _state(session)

    @app.get("/api/session/{sid}")
    def read_session(sid: str):
        session = get_session(sid)
        with session.lock:
            return _state(session)

    @app.post("/api/session/{sid}/mutate")
    def mutate(sid: str, body: MutateBody):
        session = get_session(sid)
        with session.lock:
            swp = session.entries[-1].swp
            if not 1 <= body.vertex <= swp.species.quiver.n:
                raise ApiError(400, "bad-vertex",
                               "vertex %d is out of range 1..%d"
                               % (body.vertex, swp.species.quiver.n))
            try:
                result, step = mutate_step(swp, body.vertex)
            except ValueError as exc:
                raise ApiError(409, "not-2-acyclic", str(exc))
            _push(session, Entry(result, step, None))
            return _state(session)

    @app.post("/api/session/{sid}/undo")
    def undo(sid: str):
        session = get_session(sid)
        with session.lock:
            if len(session.entries) <= 1:
                raise ApiError(409, "history-empty", "nothing to undo")
            session.entries.pop()
            return _state(session)

    @app.post("/api/session/{sid}/search")
    def search(sid: str, body: SearchBody):
        if not 0 <= body.budget <= MAX_BUDGET:
            raise ApiError(400, "invalid-request",
                           "budget must be between 0 and %d" % MAX_BUDGET)
        if len(body.sequence) > MAX_SEQUENCE:
            raise ApiError(400, "invalid-request",
                           "sequence is longer than %d" % MAX_SEQUENCE)
        session = get_session(sid)
        with session.lock:
            swp = session.entries[-1].swp
            quiver = swp.species.quiver
            for k in body.sequence:
                if not 1 <= k <= quiver.n:
                    raise ApiError(400, "bad-vertex",
                                   "vertex %d is out of range 1..%d" % (k, quiver.n))
            try:
                result = search_nondegenerate(
                    quiver, swp.species.tower.p, tuple(body.sequence),
                    budget=body.budget, seed=body.seed, max_r=body.max_ext,
                    max_cycle_length=body.max_cycle_length,
                    truncation=swp.truncation)
            except ValueError as exc:
                raise ApiError(400, "invalid-input", str(exc))
            payload = search_result_to_json(result)
            if result.found:
                badge = {key: payload[key]
                         for key in ("found", "sequence", "seed", "attempt",
                                     "attempts", "base_degree", "rungs")}
                _push(session, Entry(result.witness, None, badge))
            return {"result": payload, "state": _state(session)}

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")
    return app
