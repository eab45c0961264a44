"""Sphere sessions: a center user, an editable context and derived spheres.

The white sphere is the baseline recommendation ranking and never changes
while the context evolves. The blue sphere is exactly the context set. The
gray sphere is recomputed from the context on every edit: a content match
against the aggregated context profile combined with CF signals from the
context users. Removing a context item replays the remaining additions in
their original order, so removal is a true undo.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, replace

from . import cf, content
from .config import DEFAULT_CONFIG, CombinerWeights, EngineConfig
from .corpus.model import CorpusSnapshot
from .engine import baseline_full, combine
from .errors import (
    DuplicateContextItemError,
    NotInContextError,
    SelfContextError,
    UnknownItemError,
    UnknownSessionError,
    UnknownUserError,
)
from .recommendation import ItemRef, Recommendation, Source


@dataclass(frozen=True)
class SphereSession:
    session_id: str
    center: str
    snapshot: CorpusSnapshot
    config: EngineConfig
    context: tuple[ItemRef, ...]
    baseline: tuple[Recommendation, ...]
    gray_basis: tuple[Recommendation, ...]

    @property
    def white(self) -> tuple[Recommendation, ...]:
        return self.baseline[: self.config.white_capacity]

    @property
    def blue(self) -> tuple[ItemRef, ...]:
        return self.context

    @property
    def gray(self) -> tuple[Recommendation, ...]:
        return self.gray_basis[: self.config.gray_capacity]

    def state_dict(self) -> dict:
        """Full session state for replay and equality checks."""
        return {
            "session_id": self.session_id,
            "center": self.center,
            "context": [{"kind": ref.kind, "id": ref.id} for ref in self.context],
            "baseline": [_rec_dict(rec) for rec in self.baseline],
            "gray_basis": [_rec_dict(rec) for rec in self.gray_basis],
        }


def _rec_dict(rec: Recommendation) -> dict:
    return {
        "kind": rec.item.kind,
        "id": rec.item.id,
        "strength": rec.strength,
        "stars": rec.stars,
        "source": rec.source.value,
        "explanation": rec.explanation,
    }


def open_session(
    snapshot: CorpusSnapshot,
    center: str,
    config: EngineConfig = DEFAULT_CONFIG,
    session_id: str = "s1",
) -> SphereSession:
    """Fresh session: empty context, white sphere from the baseline ranking."""
    if center not in snapshot.users:
        raise UnknownUserError(center)
    return SphereSession(
        session_id=session_id,
        center=center,
        snapshot=snapshot,
        config=config,
        context=(),
        baseline=tuple(baseline_full(snapshot, center, config)),
        gray_basis=(),
    )


def _validate_context_ref(snapshot: CorpusSnapshot, ref: ItemRef) -> None:
    if ref.kind == "user":
        if ref.id not in snapshot.users:
            raise UnknownItemError(ref.id)
    elif ref.kind == "ro":
        if ref.id not in snapshot.ros:
            raise UnknownItemError(ref.id)
    else:
        raise ValueError("context items must be users or research objects")


def _context_profile(
    snapshot: CorpusSnapshot, context: tuple[ItemRef, ...], config: EngineConfig
) -> content.KeywordProfile:
    weights: dict[str, float] = {}
    for ref in context:
        if ref.kind == "ro":
            part = content.item_profile(snapshot, ref.id, boosts=config.boosts)
        else:
            part = content.user_profile(
                snapshot,
                ref.id,
                boosts=config.boosts,
                rating_threshold=config.rating_threshold,
                rated_factor=config.rated_factor,
            )
        for term, weight in part.weights.items():
            weights[term] = weights.get(term, 0.0) + weight
    norm = sum(w * w for w in weights.values()) ** 0.5
    if norm > 0:
        weights = {term: w / norm for term, w in weights.items()}
    return content.KeywordProfile(owner="context", weights=weights)


def _context_cf_list(
    snapshot: CorpusSnapshot,
    center: str,
    context: tuple[ItemRef, ...],
    config: EngineConfig,
) -> list[Recommendation]:
    """CF recommendations of the context users, merged by mean strength."""
    context_users = [ref.id for ref in context if ref.kind == "user"]
    if not context_users:
        return []
    unbounded = snapshot.n_items()
    strengths: dict[ItemRef, list[float]] = {}
    voters: dict[ItemRef, list[str]] = {}
    for user in context_users:
        for rec in cf.recommend_cf(snapshot, user, config.cf_k, unbounded):
            strengths.setdefault(rec.item, []).append(rec.strength)
            voters.setdefault(rec.item, []).append(user)
    out = []
    for item in sorted(strengths, key=lambda ref: (ref.id, ref.kind)):
        values = strengths[item]
        mean = sum(values) / len(values)
        if item.kind == "user" and item.id == center:
            continue
        names = ", ".join(
            snapshot.users[u].name or u for u in voters[item]
        )
        out.append(
            Recommendation(
                subject=center,
                item=item,
                strength=min(1.0, max(0.0, mean)),
                source=Source.CF,
                explanation=f"Rated highly by users similar to context user(s) {names}.",
            )
        )
    return out


def _context_recommendations(
    snapshot: CorpusSnapshot,
    center: str,
    context: tuple[ItemRef, ...],
    config: EngineConfig,
) -> list[Recommendation]:
    """The untruncated gray-sphere basis for a context."""
    if not context:
        return []
    profile = _context_profile(snapshot, context, config)
    content_list = []
    for item_id, score in content.rank_items(snapshot, profile, boosts=config.boosts):
        overlap = content.top_overlap(snapshot, profile, item_id, boosts=config.boosts)
        content_list.append(
            Recommendation(
                subject=center,
                item=ItemRef("ro" if item_id in snapshot.ros else "resource", item_id),
                strength=score,
                source=Source.CONTENT,
                explanation=(
                    "Matches the context profile: "
                    + ", ".join(f"{term} ({weight:.2f})" for term, weight in overlap)
                    + "."
                ),
            )
        )
    cf_list = _context_cf_list(snapshot, center, context, config)
    weights = CombinerWeights(
        cf=config.gray_cf_weight, social=0.0, content=config.gray_content_weight
    )
    combined = combine(
        {Source.CF: cf_list, Source.CONTENT: content_list},
        weights,
        snapshot.n_items() + len(snapshot.users),
    )
    blue_ids = {ref.id for ref in context}
    excluded = (
        blue_ids
        | set(snapshot.created_by(center))
        | set(snapshot.ratings_of(center))
        | {center}
    )
    return [rec for rec in combined if rec.item.id not in excluded]


def add_context_item(session: SphereSession, item: ItemRef) -> SphereSession:
    """Add an exemplar to the context and recompute the gray sphere."""
    _validate_context_ref(session.snapshot, item)
    if item.kind == "user" and item.id == session.center:
        raise SelfContextError(session.center)
    if any(ref.id == item.id and ref.kind == item.kind for ref in session.context):
        raise DuplicateContextItemError(item.id)
    context = session.context + (item,)
    gray_basis = _context_recommendations(
        session.snapshot, session.center, context, session.config
    )
    return replace(session, context=context, gray_basis=tuple(gray_basis))


def remove_context_item(session: SphereSession, item: ItemRef) -> SphereSession:
    """Remove a context item; state equals replaying the other additions."""
    if not any(ref.id == item.id and ref.kind == item.kind for ref in session.context):
        raise NotInContextError(item.id)
    remaining = [ref for ref in session.context if not (ref.id == item.id and ref.kind == item.kind)]
    rebuilt = open_session(
        session.snapshot, session.center, session.config, session.session_id
    )
    for ref in remaining:
        rebuilt = add_context_item(rebuilt, ref)
    return rebuilt


@dataclass(frozen=True)
class Report:
    """The full, untruncated recommendation report for a session."""

    center: str
    entries: tuple[dict, ...]

    def to_dict(self) -> dict:
        return {"center": self.center, "entries": [dict(e) for e in self.entries]}


def explanation_report(session: SphereSession) -> Report:
    """Every computed recommendation (baseline and context bases), ranked."""
    entries = [dict(_rec_dict(rec), basis="baseline") for rec in session.baseline]
    entries += [dict(_rec_dict(rec), basis="context") for rec in session.gray_basis]
    entries.sort(key=lambda e: (-e["strength"], e["id"], e["basis"], e["kind"]))
    ordered = [
        {
            "basis": e["basis"],
            "kind": e["kind"],
            "id": e["id"],
            "strength": e["strength"],
            "stars": e["stars"],
            "source": e["source"],
            "explanation": e["explanation"],
        }
        for e in entries
    ]
    return Report(center=session.center, entries=tuple(ordered))


class SessionStore:
    """In-memory session registry with per-store locking.

    Sessions are immutable values; edits swap the stored value under the
    lock, which serializes concurrent operations on the same session while
    reads stay cheap. Nothing persists across process restarts.
    """

    def __init__(self, snapshot: CorpusSnapshot, config: EngineConfig = DEFAULT_CONFIG):
        self.snapshot = snapshot
        self.config = config
        self._lock = threading.Lock()
        self._sessions: dict[str, SphereSession] = {}
        self._counter = 0

    def open(self, center: str) -> SphereSession:
        with self._lock:
            self._counter += 1
            session_id = f"s{self._counter}"
        session = open_session(self.snapshot, center, self.config, session_id)
        with self._lock:
            self._sessions[session_id] = session
        return session

    def get(self, session_id: str) -> SphereSession:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise UnknownSessionError(session_id)
        return session

    def add_context(self, session_id: str, item: ItemRef) -> SphereSession:
        with self._lock:
            session = self._sessions.get(session_id)
            if session is None:
                raise UnknownSessionError(session_id)
            updated = add_context_item(session, item)
            self._sessions[session_id] = updated
        return updated

    def remove_context(self, session_id: str, item: ItemRef) -> SphereSession:
        with self._lock:
            session = self._sessions.get(session_id)
            if session is None:
                raise UnknownSessionError(session_id)
            updated = remove_context_item(session, item)
            self._sessions[session_id] = updated
        return updated
