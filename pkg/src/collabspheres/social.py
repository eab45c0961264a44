"""Social-graph recommender: friendship plus co-authorship interactions.

The graph is weighted and undirected; an edge exists when two users are
friends or co-authored at least one research object or resource. User-user
similarity blends the normalized direct edge weight with a weighted Jaccard
over the two neighbor sets (the compared pair itself excluded).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .corpus.model import CorpusSnapshot
from .errors import SelfComparisonError, UnknownUserError
from .recommendation import ItemRef, Recommendation, Source

DEFAULT_FRIEND_WEIGHT = 1.0
DEFAULT_COAUTHOR_WEIGHT = 0.5


@dataclass(frozen=True)
class SocialEdge:
    weight: float
    friend: bool
    coauthored_items: tuple[str, ...]


@dataclass(frozen=True, eq=False)
class SocialGraph:
    nodes: frozenset[str]
    edges: Mapping[tuple[str, str], SocialEdge]
    adjacency: Mapping[str, Mapping[str, float]]
    max_edge_weight: float

    def edge(self, u: str, v: str) -> SocialEdge | None:
        return self.edges.get((u, v) if u < v else (v, u))

    def neighbors(self, u: str) -> Mapping[str, float]:
        return self.adjacency.get(u, {})


def build_social_graph(
    snapshot: CorpusSnapshot,
    friend_weight: float = DEFAULT_FRIEND_WEIGHT,
    coauthor_weight: float = DEFAULT_COAUTHOR_WEIGHT,
) -> SocialGraph:
    """Weight each pair by friend_weight*[friends] + coauthor_weight*#co-authored."""
    if friend_weight < 0 or coauthor_weight < 0:
        raise ValueError("edge weights must be >= 0")
    if friend_weight == 0 and coauthor_weight == 0:
        raise ValueError("at least one edge weight must be positive")

    coauthored: dict[tuple[str, str], list[str]] = {}
    for entity in list(snapshot.ros.values()) + list(snapshot.resources.values()):
        creators = sorted(set(entity.creators))
        for i, a in enumerate(creators):
            for b in creators[i + 1 :]:
                coauthored.setdefault((a, b), []).append(entity.id)

    friend_pairs = {(e.a, e.b) for e in snapshot.friend_edges}
    edges: dict[tuple[str, str], SocialEdge] = {}
    for pair in friend_pairs | set(coauthored):
        items = tuple(sorted(coauthored.get(pair, ())))
        weight = friend_weight * (pair in friend_pairs) + coauthor_weight * len(items)
        if weight > 0.0:
            edges[pair] = SocialEdge(
                weight=weight, friend=pair in friend_pairs, coauthored_items=items
            )

    adjacency: dict[str, dict[str, float]] = {}
    for (a, b), edge in edges.items():
        adjacency.setdefault(a, {})[b] = edge.weight
        adjacency.setdefault(b, {})[a] = edge.weight

    return SocialGraph(
        nodes=frozenset(snapshot.users),
        edges=edges,
        adjacency=adjacency,
        max_edge_weight=max((e.weight for e in edges.values()), default=0.0),
    )


def interaction_similarity(
    graph: SocialGraph,
    u: str,
    v: str,
    *,
    direct_weight: float = 0.5,
    jaccard_weight: float = 0.5,
) -> float:
    """Blend of normalized direct edge weight and weighted neighbor Jaccard.

    The Jaccard term ranges over the union of the two neighbor sets with u
    and v themselves excluded, which keeps the measure monotone in the
    strength of the direct interaction.
    """
    if u == v:
        raise SelfComparisonError(u)
    for node in (u, v):
        if node not in graph.nodes:
            raise UnknownUserError(node)
    total = direct_weight + jaccard_weight
    if total <= 0:
        raise ValueError("at least one blend weight must be positive")
    direct_weight, jaccard_weight = direct_weight / total, jaccard_weight / total

    edge = graph.edge(u, v)
    direct = edge.weight / graph.max_edge_weight if edge and graph.max_edge_weight > 0 else 0.0

    nu = graph.neighbors(u)
    nv = graph.neighbors(v)
    min_sum = 0.0
    max_sum = 0.0
    for x in set(nu) | set(nv):
        if x == u or x == v:
            continue
        wu = nu.get(x, 0.0)
        wv = nv.get(x, 0.0)
        min_sum += min(wu, wv)
        max_sum += max(wu, wv)
    jaccard = min_sum / max_sum if max_sum > 0 else 0.0

    return direct_weight * direct + jaccard_weight * jaccard


def recommend_users(
    snapshot: CorpusSnapshot,
    graph: SocialGraph,
    user: str,
    n: int = 10,
    *,
    direct_weight: float = 0.5,
    jaccard_weight: float = 0.5,
) -> list[Recommendation]:
    """Top-n non-friend users by interaction similarity (> 0)."""
    if user not in graph.nodes:
        raise UnknownUserError(user)
    friends = set(snapshot.friends_of(user))
    # Similarity is zero without a direct edge or a shared neighbor, so only
    # the two-hop neighborhood can score.
    candidates = set(graph.neighbors(user))
    for neighbor in graph.neighbors(user):
        candidates.update(graph.neighbors(neighbor))
    candidates.discard(user)
    candidates -= friends
    scored = []
    for candidate in sorted(candidates):
        sim = interaction_similarity(
            graph, user, candidate, direct_weight=direct_weight, jaccard_weight=jaccard_weight
        )
        if sim > 0.0:
            scored.append((candidate, sim))
    scored.sort(key=lambda pair: (-pair[1], pair[0]))

    out = []
    for candidate, sim in scored[:n]:
        shared = sorted(
            x
            for x in set(graph.neighbors(user)) & set(graph.neighbors(candidate))
            if x not in (user, candidate)
        )
        parts = []
        if shared:
            parts.append("shared contacts: " + ", ".join(shared))
        edge = graph.edge(user, candidate)
        if edge and edge.coauthored_items:
            parts.append("co-authored: " + ", ".join(edge.coauthored_items))
        detail = "; ".join(parts) if parts else "connected through the collaboration graph"
        name = snapshot.users[candidate].name or candidate
        out.append(
            Recommendation(
                subject=user,
                item=ItemRef("user", candidate),
                strength=sim,
                source=Source.SOCIAL,
                explanation=f"Socially close to {name} ({detail}).",
            )
        )
    return out
