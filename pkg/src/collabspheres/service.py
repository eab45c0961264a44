"""Hypermedia HTTP facade over the engine.

Every 2xx response is an envelope {payload, links}; links carry a fixed
relation vocabulary (self, friends, second-degree-friends, ros, friends-ros,
open-session, context, report, recommendations) so clients navigate by
following links rather than building URLs. Errors are problem documents
{status, code, detail}.
"""

from __future__ import annotations

import json

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .config import DEFAULT_CONFIG, EngineConfig
from .corpus.model import CorpusSnapshot, format_timestamp, relations
from .engine import corpus_stats
from .errors import (
    DuplicateContextItemError,
    NotInContextError,
    SelfContextError,
    UnknownItemError,
    UnknownSessionError,
    UnknownUserError,
)
from .recommendation import ItemRef, Recommendation
from .sessions import SessionStore, SphereSession, explanation_report

MEDIA_TYPE = "application/json"


def _problem(status: int, code: str, detail: str) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"status": status, "code": code, "detail": detail},
    )


def _envelope(payload, links: list[tuple[str, str]]) -> dict:
    return {
        "payload": payload,
        "links": [
            {"rel": rel, "href": href, "media_type": MEDIA_TYPE} for rel, href in links
        ],
    }


def _label(snapshot: CorpusSnapshot, kind: str, entity_id: str) -> str:
    if kind == "user":
        user = snapshot.users.get(entity_id)
        return user.name if user else entity_id
    entity = snapshot.item(entity_id)
    return entity.title if entity else entity_id


def _rec_node(snapshot: CorpusSnapshot, rec: Recommendation) -> dict:
    return {
        "kind": rec.item.kind,
        "id": rec.item.id,
        "label": _label(snapshot, rec.item.kind, rec.item.id),
        "strength": rec.strength,
        "stars": rec.stars,
        "source": rec.source.value,
        "explanation": rec.explanation,
    }


def _context_node(snapshot: CorpusSnapshot, ref: ItemRef) -> dict:
    return {
        "kind": ref.kind,
        "id": ref.id,
        "label": _label(snapshot, ref.kind, ref.id),
        "strength": None,
        "stars": None,
        "source": None,
        "explanation": None,
    }


def _spheres_payload(snapshot: CorpusSnapshot, session: SphereSession) -> dict:
    return {
        "white": [_rec_node(snapshot, rec) for rec in session.white],
        "blue": [_context_node(snapshot, ref) for ref in session.blue],
        "gray": [_rec_node(snapshot, rec) for rec in session.gray],
    }


def _session_links(session_id: str) -> list[tuple[str, str]]:
    base = f"/sessions/{session_id}"
    return [
        ("self", base),
        ("recommendations", f"{base}/spheres"),
        ("context", f"{base}/context"),
        ("report", f"{base}/report"),
    ]


def _session_envelope(snapshot: CorpusSnapshot, session: SphereSession) -> dict:
    payload = {
        "session_id": session.session_id,
        "center": session.center,
        "spheres": _spheres_payload(snapshot, session),
    }
    return _envelope(payload, _session_links(session.session_id))


async def _json_body(request: Request) -> dict:
    try:
        body = json.loads(await request.body())
    except (json.JSONDecodeError, UnicodeDecodeError):
        raise ValueError("request body must be valid JSON")
    if not isinstance(body, dict):
        raise ValueError("request body must be a JSON object")
    return body


def _parse_item_ref(value) -> ItemRef:
    if not isinstance(value, dict):
        raise ValueError("item must be an object with 'kind' and 'id'")
    kind = value.get("kind")
    item_id = value.get("id")
    if kind not in ("user", "ro") or not isinstance(item_id, str) or not item_id:
        raise ValueError("item must carry kind 'user' or 'ro' and a non-empty id")
    return ItemRef(kind, item_id)


def create_app(snapshot: CorpusSnapshot, config: EngineConfig = DEFAULT_CONFIG) -> FastAPI:
    app = FastAPI(title="CollabSpheres service", docs_url=None, redoc_url=None)
    store = SessionStore(snapshot, config)
    stats_cache: dict[str, dict] = {}

    @app.exception_handler(UnknownUserError)
    async def _unknown_user(request: Request, exc: UnknownUserError):
        return _problem(404, "unknown-user", str(exc))

    @app.exception_handler(UnknownItemError)
    async def _unknown_item(request: Request, exc: UnknownItemError):
        return _problem(404, "unknown-item", str(exc))

    @app.exception_handler(UnknownSessionError)
    async def _unknown_session(request: Request, exc: UnknownSessionError):
        return _problem(404, "unknown-session", str(exc))

    @app.exception_handler(NotInContextError)
    async def _not_in_context(request: Request, exc: NotInContextError):
        return _problem(404, "not-in-context", str(exc))

    @app.exception_handler(DuplicateContextItemError)
    async def _duplicate_context(request: Request, exc: DuplicateContextItemError):
        return _problem(409, "duplicate-context-item", str(exc))

    @app.exception_handler(SelfContextError)
    async def _self_context(request: Request, exc: SelfContextError):
        return _problem(409, "self-context", str(exc))

    @app.exception_handler(ValueError)
    async def _bad_request(request: Request, exc: ValueError):
        return _problem(400, "invalid-request", str(exc))

    @app.exception_handler(RequestValidationError)
    async def _validation(request: Request, exc: RequestValidationError):
        return _problem(400, "invalid-request", "malformed request")

    @app.get("/users/{user_id:path}/relations")
    async def get_relations(user_id: str):
        rels = relations(snapshot, user_id)
        payload = {
            "user": user_id,
            "friends": [
                {"kind": "user", "id": uid, "label": _label(snapshot, "user", uid)}
                for uid in rels.friends
            ],
            "second_degree_friends": [
                {"kind": "user", "id": uid, "label": _label(snapshot, "user", uid)}
                for uid in rels.second_degree_friends
            ],
            "own_ros": [
                {"kind": "ro", "id": rid, "label": _label(snapshot, "ro", rid)}
                for rid in rels.own_ros
            ],
            "friends_ros": [
                {"kind": "ro", "id": rid, "label": _label(snapshot, "ro", rid)}
                for rid in rels.friends_ros
            ],
        }
        return _envelope(
            payload,
            [("self", f"/users/{user_id}/relations"), ("open-session", "/sessions")],
        )

    @app.get("/users/{user_id:path}")
    async def get_user(user_id: str):
        user = snapshot.users.get(user_id)
        if user is None:
            raise UnknownUserError(user_id)
        payload = {
            "id": user.id,
            "name": user.name,
            "keywords": list(user.declared_keywords),
            "created_at": format_timestamp(user.created_at),
        }
        relations_href = f"/users/{user_id}/relations"
        return _envelope(
            payload,
            [
                ("self", f"/users/{user_id}"),
                ("friends", relations_href),
                ("second-degree-friends", relations_href),
                ("ros", relations_href),
                ("friends-ros", relations_href),
                ("open-session", "/sessions"),
            ],
        )

    @app.get("/ros/{ro_id:path}")
    async def get_ro(ro_id: str):
        ro = snapshot.ros.get(ro_id)
        if ro is None:
            raise UnknownItemError(ro_id)
        payload = {
            "id": ro.id,
            "title": ro.title,
            "description": ro.description,
            "creators": list(ro.creators),
            "tags": list(ro.tags),
            "resources": list(ro.resources),
            "created_at": format_timestamp(ro.created_at),
        }
        return _envelope(payload, [("self", f"/ros/{ro_id}")])

    @app.get("/resources/{resource_id:path}")
    async def get_resource(resource_id: str):
        resource = snapshot.resources.get(resource_id)
        if resource is None:
            raise UnknownItemError(resource_id)
        payload = {
            "id": resource.id,
            "title": resource.title,
            "kind": resource.kind,
            "creators": list(resource.creators),
            "tags": list(resource.tags),
        }
        return _envelope(payload, [("self", f"/resources/{resource_id}")])

    @app.post("/sessions", status_code=201)
    async def open_session(request: Request):
        body = await _json_body(request)
        center = body.get("center")
        if not isinstance(center, str) or not center:
            raise ValueError("body must carry a non-empty 'center' user id")
        session = store.open(center)
        return JSONResponse(
            status_code=201,
            content=_session_envelope(snapshot, session),
            headers={"Location": f"/sessions/{session.session_id}"},
        )

    @app.get("/sessions/{session_id}")
    async def get_session(session_id: str):
        return _session_envelope(snapshot, store.get(session_id))

    @app.get("/sessions/{session_id}/spheres")
    async def get_spheres(session_id: str):
        session = store.get(session_id)
        return _envelope(
            _spheres_payload(snapshot, session), _session_links(session_id)
        )

    @app.post("/sessions/{session_id}/context")
    async def add_context(session_id: str, request: Request):
        body = await _json_body(request)
        ref = _parse_item_ref(body.get("item"))
        session = store.add_context(session_id, ref)
        return _envelope(_spheres_payload(snapshot, session), _session_links(session_id))

    @app.delete("/sessions/{session_id}/context/{item_id:path}")
    async def remove_context(session_id: str, item_id: str):
        session = store.get(session_id)
        matching = [ref for ref in session.context if ref.id == item_id]
        if not matching:
            raise NotInContextError(item_id)
        session = store.remove_context(session_id, matching[0])
        return _envelope(_spheres_payload(snapshot, session), _session_links(session_id))

    @app.get("/sessions/{session_id}/report")
    async def get_report(session_id: str):
        session = store.get(session_id)
        report = explanation_report(session).to_dict()
        return _envelope(
            report,
            [
                ("self", f"/sessions/{session_id}/report"),
                ("recommendations", f"/sessions/{session_id}/spheres"),
            ],
        )

    @app.get("/stats")
    async def get_stats():
        if "stats" not in stats_cache:
            stats_cache["stats"] = corpus_stats(snapshot, config).to_dict()
        return _envelope(stats_cache["stats"], [("self", "/stats")])

    return app
