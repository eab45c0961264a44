"""Recommendation engine: straight-weighted combination of the three
recommenders, pack inference from resource-level recommendations, baseline
(white-sphere) computation and the corpus statistics report.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence
from weakref import WeakKeyDictionary

from . import cf, content, social
from .config import DEFAULT_CONFIG, CombinerWeights, EngineConfig
from .corpus.model import CorpusSnapshot
from .errors import MixedSubjectsError, UnknownUserError
from .recommendation import ItemRef, Recommendation, Source

_COMBINABLE_SOURCES = (Source.CF, Source.SOCIAL, Source.CONTENT)

# Snapshots are immutable, so graphs and baselines can be cached per snapshot.
_graph_cache: "WeakKeyDictionary[CorpusSnapshot, dict]" = WeakKeyDictionary()
_baseline_cache: "WeakKeyDictionary[CorpusSnapshot, dict]" = WeakKeyDictionary()


def _graph_for(snapshot: CorpusSnapshot, config: EngineConfig) -> social.SocialGraph:
    per_snapshot = _graph_cache.setdefault(snapshot, {})
    key = (config.friend_weight, config.coauthor_weight)
    graph = per_snapshot.get(key)
    if graph is None:
        graph = social.build_social_graph(snapshot, *key)
        per_snapshot[key] = graph
    return graph


def combine(
    lists: Mapping[Source, Sequence[Recommendation]],
    weights: CombinerWeights,
    n: int,
) -> list[Recommendation]:
    """Straight-weighted combination: per item, sum of weight * strength.

    A source that did not emit an item contributes 0 for it. Explanations
    concatenate the contributing sources' explanations with their weights.
    """
    subjects = {rec.subject for recs in lists.values() for rec in recs}
    if len(subjects) > 1:
        raise MixedSubjectsError(f"combiner got lists for subjects {sorted(subjects)}")
    subject = next(iter(subjects), None)
    if subject is None:
        return []

    scores: dict[ItemRef, float] = {}
    notes: dict[ItemRef, list[str]] = {}
    for source in _COMBINABLE_SOURCES:
        weight = weights.weight(source)
        for rec in lists.get(source, ()):
            scores[rec.item] = scores.get(rec.item, 0.0) + weight * rec.strength
            notes.setdefault(rec.item, []).append(
                f"{source.value} (w={weight:.2f}): {rec.explanation}"
            )

    ranked = sorted(scores.items(), key=lambda entry: (-entry[1], entry[0].id, entry[0].kind))
    return [
        Recommendation(
            subject=subject,
            item=item,
            strength=min(1.0, max(0.0, score)),
            source=Source.COMBINED,
            explanation=" | ".join(notes[item]),
        )
        for item, score in ranked[:n]
    ]


def _pack_candidates(
    snapshot: CorpusSnapshot,
    resource_strengths: Mapping[str, float],
    theta: float,
    subject: str,
) -> list[tuple[str, float, list[str]]]:
    """Packs whose recommended-member fraction reaches theta.

    Returns (ro id, mean strength of hits, sorted hit ids), ordered by ro id.
    Packs created by the subject and packs without resources never qualify.
    """
    hits_by_ro: dict[str, list[str]] = {}
    for resource_id in resource_strengths:
        for ro_id in snapshot.packs_by_resource.get(resource_id, ()):
            hits_by_ro.setdefault(ro_id, []).append(resource_id)
    out = []
    for ro_id in sorted(hits_by_ro):
        ro = snapshot.ros[ro_id]
        if subject in ro.creators or not ro.resources:
            continue
        hits = sorted(hits_by_ro[ro_id])
        if len(hits) / len(ro.resources) < theta:
            continue
        strength = sum(resource_strengths[r] for r in hits) / len(hits)
        out.append((ro_id, min(1.0, max(0.0, strength)), hits))
    return out


def infer_pack_recs(
    snapshot: CorpusSnapshot,
    resource_recs: Sequence[Recommendation],
    theta: float,
) -> list[Recommendation]:
    """Promote a pack when at least a theta-fraction of its member resources
    was recommended; pack strength is the mean strength of the hit members.
    """
    if not 0 < theta <= 1:
        raise ValueError("theta must be in (0, 1]")
    if any(rec.item.kind != "resource" for rec in resource_recs):
        raise ValueError("pack inference expects resource recommendations only")
    subjects = {rec.subject for rec in resource_recs}
    if len(subjects) > 1:
        raise MixedSubjectsError(f"pack inference got subjects {sorted(subjects)}")
    if not resource_recs:
        return []
    subject = next(iter(subjects))

    strengths = {rec.item.id: rec.strength for rec in resource_recs}
    out = [
        Recommendation(
            subject=subject,
            item=ItemRef("ro", ro_id),
            strength=strength,
            source=Source.INFERRED_PACK,
            explanation=(
                f"{len(hits)} of {len(snapshot.ros[ro_id].resources)} member "
                f"resources were recommended: {', '.join(hits)}."
            ),
        )
        for ro_id, strength, hits in _pack_candidates(snapshot, strengths, theta, subject)
    ]
    out.sort(key=lambda rec: (-rec.strength, rec.item.id))
    return out


@dataclass(frozen=True)
class SourceLists:
    """Per-source recommendation lists for one subject user."""

    cf: tuple[Recommendation, ...]
    social: tuple[Recommendation, ...]
    content: tuple[Recommendation, ...]
    inferred: tuple[Recommendation, ...]
    combined: tuple[Recommendation, ...]


def _recommend_all(
    snapshot: CorpusSnapshot,
    user: str,
    config: EngineConfig,
    graph: social.SocialGraph,
) -> SourceLists:
    unbounded = snapshot.n_items() + len(snapshot.users)
    cf_list = cf.recommend_cf(snapshot, user, config.cf_k, unbounded)
    social_list = social.recommend_users(
        snapshot,
        graph,
        user,
        unbounded,
        direct_weight=config.direct_blend,
        jaccard_weight=config.jaccard_blend,
    )
    content_list = content.recommend_content(
        snapshot,
        user,
        unbounded,
        boosts=config.boosts,
        rating_threshold=config.rating_threshold,
        rated_factor=config.rated_factor,
    )
    combined = combine(
        {Source.CF: cf_list, Source.SOCIAL: social_list, Source.CONTENT: content_list},
        config.combiner,
        unbounded,
    )
    resource_recs = [rec for rec in combined if rec.item.kind == "resource"]
    inferred = infer_pack_recs(snapshot, resource_recs, config.theta)
    return SourceLists(
        cf=tuple(cf_list),
        social=tuple(social_list),
        content=tuple(content_list),
        inferred=tuple(inferred),
        combined=tuple(combined),
    )


def baseline_full(
    snapshot: CorpusSnapshot, center: str, config: EngineConfig = DEFAULT_CONFIG
) -> list[Recommendation]:
    """The untruncated white-sphere basis: combined lists plus inferred packs.

    When the combiner and the pack inference both emit the same pack, the
    stronger entry wins (the combined one on ties).
    """
    if center not in snapshot.users:
        raise UnknownUserError(center)
    per_snapshot = _baseline_cache.setdefault(snapshot, {})
    cache_key = (center, config)
    cached = per_snapshot.get(cache_key)
    if cached is not None:
        return list(cached)
    lists = _recommend_all(snapshot, center, config, _graph_for(snapshot, config))
    merged: dict[ItemRef, Recommendation] = {rec.item: rec for rec in lists.combined}
    for rec in lists.inferred:
        existing = merged.get(rec.item)
        if existing is None or rec.strength > existing.strength:
            merged[rec.item] = rec
    ranked = sorted(merged.values(), key=lambda rec: (-rec.strength, rec.item.id, rec.item.kind))
    per_snapshot[cache_key] = tuple(ranked)
    return ranked


def baseline_recommendations(
    snapshot: CorpusSnapshot, center: str, config: EngineConfig = DEFAULT_CONFIG
) -> list[Recommendation]:
    """The white sphere: the baseline ranking truncated to its capacity."""
    return baseline_full(snapshot, center, config)[: config.white_capacity]


def batch_recommendations(
    snapshot: CorpusSnapshot, config: EngineConfig = DEFAULT_CONFIG
) -> Iterator[tuple[str, SourceLists]]:
    """Per-source lists for every user, in sorted user order."""
    graph = _graph_for(snapshot, config)
    for user in sorted(snapshot.users):
        yield user, _recommend_all(snapshot, user, config, graph)


@dataclass(frozen=True)
class SourceCounts:
    """Per-source emission counts for one subject user.

    Mirrors the lengths of the ``SourceLists`` lists without materializing
    recommendation objects, which keeps whole-corpus batches cheap.
    """

    cf: int
    social: int
    content: int
    inferred: int

    @property
    def any(self) -> bool:
        return bool(self.cf or self.social or self.content or self.inferred)


def _count_for_user(
    snapshot: CorpusSnapshot,
    user: str,
    config: EngineConfig,
    graph: social.SocialGraph,
) -> SourceCounts:
    unbounded = snapshot.n_items() + len(snapshot.users)
    cf_list = cf.recommend_cf(snapshot, user, config.cf_k, unbounded)
    social_count = len(
        social.recommend_users(
            snapshot,
            graph,
            user,
            unbounded,
            direct_weight=config.direct_blend,
            jaccard_weight=config.jaccard_blend,
        )
    )
    profile = content.user_profile(
        snapshot,
        user,
        boosts=config.boosts,
        rating_threshold=config.rating_threshold,
        rated_factor=config.rated_factor,
    )
    exclude = frozenset(snapshot.created_by(user)) | frozenset(snapshot.ratings_of(user))
    content_scored = content.rank_items(snapshot, profile, exclude=exclude, boosts=config.boosts)

    # Combined strengths for resources, accumulated in combiner source order
    # (CF then CONTENT) so the arithmetic matches combine() exactly.
    weights = config.combiner
    resource_strengths: dict[str, float] = {}
    for rec in cf_list:
        if rec.item.kind == "resource":
            resource_strengths[rec.item.id] = weights.cf * rec.strength
    for item_id, score in content_scored:
        if item_id in snapshot.resources:
            resource_strengths[item_id] = (
                resource_strengths.get(item_id, 0.0) + weights.content * score
            )
    clamped = {
        item_id: min(1.0, max(0.0, value)) for item_id, value in resource_strengths.items()
    }
    inferred = _pack_candidates(snapshot, clamped, config.theta, user)
    return SourceCounts(
        cf=len(cf_list),
        social=social_count,
        content=len(content_scored),
        inferred=len(inferred),
    )


@dataclass(frozen=True)
class StatsReport:
    users: int
    workflows: int
    files: int
    packs: int
    recs_total: int
    recs_cf: int
    recs_content: int
    recs_social: int
    recs_inferred_pack: int
    users_with_at_least_one_rec: int

    def to_dict(self) -> dict[str, int]:
        return {
            "users": self.users,
            "workflows": self.workflows,
            "files": self.files,
            "packs": self.packs,
            "recs_total": self.recs_total,
            "recs_cf": self.recs_cf,
            "recs_content": self.recs_content,
            "recs_social": self.recs_social,
            "recs_inferred_pack": self.recs_inferred_pack,
            "users_with_at_least_one_rec": self.users_with_at_least_one_rec,
        }


def corpus_stats(
    snapshot: CorpusSnapshot, config: EngineConfig = DEFAULT_CONFIG
) -> StatsReport:
    """Dataset and recommendation counts over a batch run for every user.

    ``workflows`` counts workflow-kind resources; ``files`` counts all other
    resources, so the two together cover the resource set.
    """
    workflows = sum(1 for r in snapshot.resources.values() if r.kind == "workflow")
    graph = _graph_for(snapshot, config)
    recs_cf = recs_content = recs_social = recs_inferred = 0
    covered = 0
    for user in sorted(snapshot.users):
        counts = _count_for_user(snapshot, user, config, graph)
        recs_cf += counts.cf
        recs_content += counts.content
        recs_social += counts.social
        recs_inferred += counts.inferred
        if counts.any:
            covered += 1
    return StatsReport(
        users=len(snapshot.users),
        workflows=workflows,
        files=len(snapshot.resources) - workflows,
        packs=len(snapshot.ros),
        recs_total=recs_cf + recs_content + recs_social,
        recs_cf=recs_cf,
        recs_content=recs_content,
        recs_social=recs_social,
        recs_inferred_pack=recs_inferred,
        users_with_at_least_one_rec=covered,
    )
