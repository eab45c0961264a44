"""User-based collaborative filtering over sparse rating vectors.

Neighborhoods come from cosine similarity between raw rating vectors;
predictions are similarity-weighted means of the neighbors' ratings.
A user with no ratings has no neighbors and receives no CF output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .corpus.model import CorpusSnapshot
from .errors import UnknownItemError, UnknownUserError
from .recommendation import ItemRef, Recommendation, Source

DEFAULT_K = 10


@dataclass(frozen=True)
class RatingVector:
    owner: str
    entries: Mapping[str, int]


@dataclass(frozen=True)
class Neighborhood:
    owner: str
    neighbors: tuple[tuple[str, float], ...]


def rating_vector(snapshot: CorpusSnapshot, user: str) -> RatingVector:
    if user not in snapshot.users:
        raise UnknownUserError(user)
    return RatingVector(owner=user, entries=snapshot.ratings_of(user))


def user_similarity(u: RatingVector, v: RatingVector, *, mean_center: bool = False) -> float:
    """Cosine similarity of two sparse rating vectors; 0 when either is empty.

    ``mean_center`` subtracts each vector's own mean first (Pearson-style);
    it is off by default and not wired into the engine configuration.
    """
    a, b = dict(u.entries), dict(v.entries)
    if mean_center:
        a = _centered(a)
        b = _centered(b)
    dot = sum(value * b[item] for item, value in a.items() if item in b)
    norm_a = math.sqrt(sum(value * value for value in a.values()))
    norm_b = math.sqrt(sum(value * value for value in b.values()))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    return dot / (norm_a * norm_b)


def _centered(entries: dict[str, int]) -> dict[str, float]:
    if not entries:
        return {}
    mean = sum(entries.values()) / len(entries)
    return {item: value - mean for item, value in entries.items()}


def neighborhood(snapshot: CorpusSnapshot, user: str, k: int = DEFAULT_K) -> Neighborhood:
    """Top-k most similar raters (similarity > 0, ties broken by user id)."""
    if user not in snapshot.users:
        raise UnknownUserError(user)
    if k < 1:
        raise ValueError("k must be >= 1")
    own = rating_vector(snapshot, user)
    # Only users sharing at least one rated item can have nonzero similarity.
    candidates: set[str] = set()
    for item in own.entries:
        candidates.update(snapshot.ratings_by_item.get(item, ()))
    candidates.discard(user)
    scored = []
    for other in candidates:
        sim = user_similarity(own, RatingVector(other, snapshot.ratings_of(other)))
        if sim > 0.0:
            scored.append((other, sim))
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return Neighborhood(owner=user, neighbors=tuple(scored[:k]))


def predict_rating(
    snapshot: CorpusSnapshot, user: str, item: str, k: int = DEFAULT_K
) -> float | None:
    """Similarity-weighted mean of the neighbors' ratings of one item."""
    if not snapshot.has_item(item):
        raise UnknownItemError(item)
    hood = neighborhood(snapshot, user, k)
    weighted = 0.0
    total = 0.0
    for neighbor, sim in hood.neighbors:
        value = snapshot.ratings_of(neighbor).get(item)
        if value is not None:
            weighted += sim * value
            total += sim
    if total == 0.0:
        return None
    return min(5.0, max(1.0, weighted / total))


def recommend_cf(
    snapshot: CorpusSnapshot, user: str, k: int = DEFAULT_K, n: int = 10
) -> list[Recommendation]:
    """Top-n unseen items by predicted rating, strength = (predicted - 1) / 4.

    Items the user already rated or created are never emitted.
    """
    hood = neighborhood(snapshot, user, k)
    excluded = set(snapshot.ratings_of(user)) | set(snapshot.created_by(user))
    weighted: dict[str, float] = {}
    totals: dict[str, float] = {}
    raters: dict[str, list[str]] = {}
    for neighbor, sim in hood.neighbors:
        for item, value in snapshot.ratings_of(neighbor).items():
            if item in excluded:
                continue
            weighted[item] = weighted.get(item, 0.0) + sim * value
            totals[item] = totals.get(item, 0.0) + sim
            raters.setdefault(item, []).append(neighbor)
    scored = []
    for item, total in totals.items():
        predicted = min(5.0, max(1.0, weighted[item] / total))
        strength = (predicted - 1.0) / 4.0
        scored.append((item, predicted, strength))
    scored.sort(key=lambda entry: (-entry[2], entry[0]))

    out = []
    for item, predicted, strength in scored[:n]:
        names = ", ".join(
            snapshot.users[neighbor].name or neighbor for neighbor in raters[item]
        )
        kind = "ro" if item in snapshot.ros else "resource"
        out.append(
            Recommendation(
                subject=user,
                item=ItemRef(kind, item),
                strength=strength,
                source=Source.CF,
                explanation=(
                    f"Predicted rating {predicted:.2f}/5 from "
                    f"{len(raters[item])} similar user(s): {names}."
                ),
            )
        )
    return out
