"""Keyword content-based recommender: TF-IDF item profiles, user interest
profiles and cosine profile matching.

Item profiles weight tags over titles over descriptions. User profiles mix
declared keywords, created items and highly rated items, then normalize to
unit length. Per-snapshot profile indexes are cached on the (immutable)
snapshot so batch scoring stays cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping
from weakref import WeakKeyDictionary

from .corpus import text
from .corpus.model import CorpusSnapshot, ResearchObject
from .errors import UnknownItemError, UnknownUserError
from .recommendation import ItemRef, Recommendation, Source

DEFAULT_TAG_BOOST = 3
DEFAULT_TITLE_BOOST = 2
DEFAULT_DESCRIPTION_BOOST = 1
DEFAULT_RATING_THRESHOLD = 4
DEFAULT_RATED_FACTOR = 0.5


@dataclass(frozen=True)
class KeywordProfile:
    """Weighted term map describing an item, a user or a context."""

    owner: str
    weights: Mapping[str, float]

    def norm(self) -> float:
        return math.sqrt(sum(w * w for w in self.weights.values()))


@dataclass(frozen=True)
class FieldBoosts:
    tag: int = DEFAULT_TAG_BOOST
    title: int = DEFAULT_TITLE_BOOST
    description: int = DEFAULT_DESCRIPTION_BOOST


class _ContentIndex:
    """Precomputed TF-IDF state for one snapshot and one boost setting."""

    def __init__(self, snapshot: CorpusSnapshot, boosts: FieldBoosts):
        self.boosts = boosts
        self.item_ids = snapshot.item_ids()
        counts = {
            item_id: _term_counts(snapshot.item(item_id), boosts)
            for item_id in self.item_ids
        }
        self.n_items = snapshot.n_items()
        df: dict[str, int] = {}
        for item_terms in counts.values():
            for term in item_terms:
                df[term] = df.get(term, 0) + 1
        self.df = df
        self.profiles: dict[str, dict[str, float]] = {
            item_id: {term: count * self.idf(term) for term, count in item_terms.items()}
            for item_id, item_terms in counts.items()
        }
        self.norms = [
            math.sqrt(sum(w * w for w in self.profiles[item_id].values()))
            for item_id in self.item_ids
        ]
        # Term postings as parallel (item index, weight) lists; the scoring
        # loop accumulates into a flat array indexed by item position.
        postings: dict[str, tuple[list[int], list[float]]] = {}
        for idx, item_id in enumerate(self.item_ids):
            for term, weight in self.profiles[item_id].items():
                bucket = postings.setdefault(term, ([], []))
                bucket[0].append(idx)
                bucket[1].append(weight)
        self.postings = postings
        self.user_profiles: dict[tuple, KeywordProfile] = {}

    def idf(self, term: str) -> float:
        if self.n_items == 0:
            return 1.0
        return math.log(self.n_items / (1 + self.df.get(term, 0))) + 1.0


def _term_counts(entity, boosts: FieldBoosts) -> dict[str, int]:
    counts: dict[str, int] = {}

    def add(source_text: str, boost: int) -> None:
        for term in text.terms(source_text):
            counts[term] = counts.get(term, 0) + boost

    for tag in entity.tags:
        add(tag, boosts.tag)
    add(entity.title, boosts.title)
    if isinstance(entity, ResearchObject):
        add(entity.description, boosts.description)
    return counts


_index_cache: "WeakKeyDictionary[CorpusSnapshot, dict[FieldBoosts, _ContentIndex]]" = (
    WeakKeyDictionary()
)


def _index(snapshot: CorpusSnapshot, boosts: FieldBoosts) -> _ContentIndex:
    per_snapshot = _index_cache.setdefault(snapshot, {})
    index = per_snapshot.get(boosts)
    if index is None:
        index = _ContentIndex(snapshot, boosts)
        per_snapshot[boosts] = index
    return index


def item_profile(
    snapshot: CorpusSnapshot, item: str, *, boosts: FieldBoosts = FieldBoosts()
) -> KeywordProfile:
    """TF-IDF profile of one item (tags, title and description terms)."""
    if not snapshot.has_item(item):
        raise UnknownItemError(item)
    weights = _index(snapshot, boosts).profiles[item]
    return KeywordProfile(owner=item, weights=dict(weights))


def user_profile(
    snapshot: CorpusSnapshot,
    user: str,
    *,
    boosts: FieldBoosts = FieldBoosts(),
    rating_threshold: int = DEFAULT_RATING_THRESHOLD,
    rated_factor: float = DEFAULT_RATED_FACTOR,
) -> KeywordProfile:
    """Unit-norm interest profile from keywords, created and liked items."""
    if user not in snapshot.users:
        raise UnknownUserError(user)
    index = _index(snapshot, boosts)
    cache_key = (user, rating_threshold, rated_factor)
    cached = index.user_profiles.get(cache_key)
    if cached is not None:
        return cached

    weights: dict[str, float] = {}
    for keyword in snapshot.users[user].declared_keywords:
        weights[keyword] = weights.get(keyword, 0.0) + 1.0 * index.idf(keyword)
    for item_id in snapshot.created_by(user):
        for term, weight in index.profiles[item_id].items():
            weights[term] = weights.get(term, 0.0) + weight
    for item_id, value in snapshot.ratings_of(user).items():
        if value >= rating_threshold:
            for term, weight in index.profiles[item_id].items():
                weights[term] = weights.get(term, 0.0) + rated_factor * weight

    norm = math.sqrt(sum(w * w for w in weights.values()))
    if norm > 0:
        weights = {term: w / norm for term, w in weights.items()}
    profile = KeywordProfile(owner=user, weights=weights)
    index.user_profiles[cache_key] = profile
    return profile


def match(a: KeywordProfile, b: KeywordProfile) -> float:
    """Cosine similarity of two profiles; 0 when either is empty."""
    if len(b.weights) < len(a.weights):
        a, b = b, a
    dot = sum(weight * b.weights[term] for term, weight in a.weights.items() if term in b.weights)
    norm_a = a.norm()
    norm_b = b.norm()
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    return min(1.0, max(0.0, dot / (norm_a * norm_b)))


def rank_items(
    snapshot: CorpusSnapshot,
    profile: KeywordProfile,
    *,
    exclude: frozenset[str] = frozenset(),
    boosts: FieldBoosts = FieldBoosts(),
) -> list[tuple[str, float]]:
    """Cosine-score every item against a profile via the postings index.

    Returns (item id, score) pairs with score > 0, excluded ids dropped,
    sorted score descending then id ascending.
    """
    index = _index(snapshot, boosts)
    profile_norm = profile.norm()
    if profile_norm == 0.0:
        return []
    dots = [0.0] * index.n_items
    for term, weight in profile.weights.items():
        bucket = index.postings.get(term)
        if bucket is None:
            continue
        idxs, item_weights = bucket
        for i, item_weight in zip(idxs, item_weights):
            dots[i] += weight * item_weight
    scored = []
    for i, dot in enumerate(dots):
        if dot <= 0.0:
            continue
        item_id = index.item_ids[i]
        if item_id in exclude:
            continue
        score = min(1.0, max(0.0, dot / (profile_norm * index.norms[i])))
        if score > 0.0:
            scored.append((item_id, score))
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return scored


def top_overlap(
    snapshot: CorpusSnapshot,
    profile: KeywordProfile,
    item_id: str,
    *,
    boosts: FieldBoosts = FieldBoosts(),
    k: int = 3,
) -> list[tuple[str, float]]:
    """The k strongest shared terms between a profile and one item, with
    their dot-product contributions."""
    item_weights = _index(snapshot, boosts).profiles[item_id]
    overlap = [
        (term, weight * item_weights[term])
        for term, weight in profile.weights.items()
        if term in item_weights
    ]
    overlap.sort(key=lambda tw: (-tw[1], tw[0]))
    return overlap[:k]


def overlap_text(overlap: list[tuple[str, float]]) -> str:
    top = ", ".join(f"{term} ({weight:.2f})" for term, weight in overlap)
    return f"Matches interest terms: {top}."


def recommend_content(
    snapshot: CorpusSnapshot,
    user: str,
    n: int = 10,
    *,
    boosts: FieldBoosts = FieldBoosts(),
    rating_threshold: int = DEFAULT_RATING_THRESHOLD,
    rated_factor: float = DEFAULT_RATED_FACTOR,
) -> list[Recommendation]:
    """Top-n items by profile match, excluding created and rated items."""
    profile = user_profile(
        snapshot,
        user,
        boosts=boosts,
        rating_threshold=rating_threshold,
        rated_factor=rated_factor,
    )
    exclude = frozenset(snapshot.created_by(user)) | frozenset(snapshot.ratings_of(user))
    ranked = rank_items(snapshot, profile, exclude=exclude, boosts=boosts)
    out = []
    for item_id, score in ranked[:n]:
        overlap = top_overlap(snapshot, profile, item_id, boosts=boosts)
        kind = "ro" if item_id in snapshot.ros else "resource"
        out.append(
            Recommendation(
                subject=user,
                item=ItemRef(kind, item_id),
                strength=score,
                source=Source.CONTENT,
                explanation=overlap_text(overlap),
            )
        )
    return out
