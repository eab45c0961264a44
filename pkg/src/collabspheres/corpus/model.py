"""Domain model for the research-object corpus.

Entities are frozen dataclasses; a :class:`CorpusSnapshot` bundles them with
derived indexes and is immutable after construction. Construction via
``CorpusSnapshot.build`` is deliberately permissive so that invalid snapshots
can be assembled in tests; ``loader.validate`` reports rule violations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone

from ..errors import UnknownUserError

RESOURCE_KINDS = ("workflow", "file", "document", "other")


def parse_timestamp(value: str) -> datetime:
    """Parse an RFC 3339 timestamp into an aware UTC datetime."""
    text = value[:-1] + "+00:00" if value.endswith("Z") else value
    moment = datetime.fromisoformat(text)
    if moment.tzinfo is None:
        raise ValueError(f"timestamp {value!r} has no UTC offset")
    return moment.astimezone(timezone.utc)


def format_timestamp(moment: datetime) -> str:
    return moment.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")


@dataclass(frozen=True)
class User:
    id: str
    name: str
    declared_keywords: tuple[str, ...]
    created_at: datetime


@dataclass(frozen=True)
class ResearchObject:
    """A pack: an aggregation of resources with authorship and annotations."""

    id: str
    title: str
    description: str
    creators: tuple[str, ...]
    tags: tuple[str, ...]
    resources: tuple[str, ...]
    created_at: datetime


@dataclass(frozen=True)
class Resource:
    id: str
    title: str
    kind: str
    creators: tuple[str, ...]
    tags: tuple[str, ...]


@dataclass(frozen=True)
class Rating:
    user: str
    item: str
    value: int
    at: datetime


@dataclass(frozen=True, order=True)
class FriendEdge:
    """Undirected friendship, stored canonically with a < b."""

    a: str
    b: str

    @staticmethod
    def canonical(u: str, v: str) -> "FriendEdge":
        return FriendEdge(u, v) if u < v else FriendEdge(v, u)


@dataclass(frozen=True)
class RelationSets:
    """The four entity lists surrounding a user, each sorted by id."""

    friends: tuple[str, ...]
    second_degree_friends: tuple[str, ...]
    own_ros: tuple[str, ...]
    friends_ros: tuple[str, ...]


@dataclass(frozen=True, eq=False)
class CorpusSnapshot:
    """Immutable corpus view: base entities plus derived indexes.

    Equality is by identity so snapshots stay hashable (they key per-snapshot
    caches); compare serializations to test corpus equality.
    """

    users: dict[str, User]
    ros: dict[str, ResearchObject]
    resources: dict[str, Resource]
    ratings: tuple[Rating, ...]
    friend_edges: tuple[FriendEdge, ...]
    # derived
    ratings_by_user: dict[str, dict[str, int]] = field(repr=False)
    ratings_by_item: dict[str, dict[str, int]] = field(repr=False)
    friends_adjacency: dict[str, tuple[str, ...]] = field(repr=False)
    items_by_creator: dict[str, tuple[str, ...]] = field(repr=False)
    packs_by_resource: dict[str, tuple[str, ...]] = field(repr=False)

    @classmethod
    def build(
        cls,
        users: list[User],
        ros: list[ResearchObject],
        resources: list[Resource],
        ratings: list[Rating],
        friend_edges: list[FriendEdge],
    ) -> "CorpusSnapshot":
        user_map = {u.id: u for u in users}
        ro_map = {r.id: r for r in ros}
        resource_map = {r.id: r for r in resources}
        rating_tuple = tuple(ratings)
        edge_tuple = tuple(friend_edges)
        by_user, by_item, adjacency, by_creator, packs = _derive_indexes(
            ro_map, resource_map, rating_tuple, edge_tuple
        )
        return cls(
            users=user_map,
            ros=ro_map,
            resources=resource_map,
            ratings=rating_tuple,
            friend_edges=edge_tuple,
            ratings_by_user=by_user,
            ratings_by_item=by_item,
            friends_adjacency=adjacency,
            items_by_creator=by_creator,
            packs_by_resource=packs,
        )

    # -- queries -----------------------------------------------------------

    def has_item(self, item_id: str) -> bool:
        return item_id in self.ros or item_id in self.resources

    def item(self, item_id: str) -> ResearchObject | Resource | None:
        return self.ros.get(item_id) or self.resources.get(item_id)

    def item_ids(self) -> list[str]:
        """All item ids (ROs and resources), sorted."""
        return sorted(self.ros) + sorted(self.resources)

    def n_items(self) -> int:
        return len(self.ros) + len(self.resources)

    def friends_of(self, user_id: str) -> tuple[str, ...]:
        return self.friends_adjacency.get(user_id, ())

    def ratings_of(self, user_id: str) -> dict[str, int]:
        return self.ratings_by_user.get(user_id, {})

    def created_by(self, user_id: str) -> tuple[str, ...]:
        return self.items_by_creator.get(user_id, ())


def _derive_indexes(
    ro_map: dict[str, ResearchObject],
    resource_map: dict[str, Resource],
    ratings: tuple[Rating, ...],
    edges: tuple[FriendEdge, ...],
) -> tuple[dict, dict, dict, dict, dict]:
    by_user: dict[str, dict[str, int]] = {}
    by_item: dict[str, dict[str, int]] = {}
    for r in ratings:
        by_user.setdefault(r.user, {})[r.item] = r.value
        by_item.setdefault(r.item, {})[r.user] = r.value

    neighbor_sets: dict[str, set[str]] = {}
    for e in edges:
        neighbor_sets.setdefault(e.a, set()).add(e.b)
        neighbor_sets.setdefault(e.b, set()).add(e.a)
    adjacency = {u: tuple(sorted(vs)) for u, vs in neighbor_sets.items()}

    creator_sets: dict[str, set[str]] = {}
    for entity in list(ro_map.values()) + list(resource_map.values()):
        for creator in set(entity.creators):
            creator_sets.setdefault(creator, set()).add(entity.id)
    by_creator = {u: tuple(sorted(ids)) for u, ids in creator_sets.items()}

    pack_sets: dict[str, set[str]] = {}
    for ro in ro_map.values():
        for resource_id in ro.resources:
            pack_sets.setdefault(resource_id, set()).add(ro.id)
    packs = {rid: tuple(sorted(ids)) for rid, ids in pack_sets.items()}

    return by_user, by_item, adjacency, by_creator, packs


def relations(snapshot: CorpusSnapshot, user: str) -> RelationSets:
    """The four lists around a user: friends, 2nd friends, own and friends' ROs."""
    if user not in snapshot.users:
        raise UnknownUserError(user)
    friends = set(snapshot.friends_of(user))
    second: set[str] = set()
    for friend in friends:
        second.update(snapshot.friends_of(friend))
    second -= friends
    second.discard(user)

    own = {ro_id for ro_id in snapshot.created_by(user) if ro_id in snapshot.ros}
    friends_ros: set[str] = set()
    for friend in friends:
        friends_ros.update(
            ro_id for ro_id in snapshot.created_by(friend) if ro_id in snapshot.ros
        )
    friends_ros -= own

    return RelationSets(
        friends=tuple(sorted(friends)),
        second_degree_friends=tuple(sorted(second)),
        own_ros=tuple(sorted(own)),
        friends_ros=tuple(sorted(friends_ros)),
    )
