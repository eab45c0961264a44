"""Corpus ingest, validation and canonical serialization.

A corpus directory holds five JSON-Lines files (users, friends, ros,
resources, ratings), one record per line, strict field sets. Ingest is
order-independent: records may reference ids defined later; referential
closure is checked once everything is parsed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path

from ..errors import DuplicateIdError, IntegrityError, ParseError
from . import text
from .model import (
    RESOURCE_KINDS,
    CorpusSnapshot,
    FriendEdge,
    Rating,
    ResearchObject,
    Resource,
    User,
    format_timestamp,
    parse_timestamp,
)

USERS_FILE = "users.jsonl"
FRIENDS_FILE = "friends.jsonl"
ROS_FILE = "ros.jsonl"
RESOURCES_FILE = "resources.jsonl"
RATINGS_FILE = "ratings.jsonl"
CORPUS_FILES = (USERS_FILE, FRIENDS_FILE, ROS_FILE, RESOURCES_FILE, RATINGS_FILE)


@dataclass(frozen=True)
class Violation:
    """A broken invariant, reported as data rather than raised."""

    entity: str
    field: str
    rule: str


class _Record:
    """One parsed JSONL object with strict field access."""

    def __init__(self, file: str, line: int, obj: dict):
        self.file = file
        self.line = line
        self.obj = obj

    def fail(self, reason: str) -> ParseError:
        return ParseError(self.file, self.line, reason)

    def check_fields(self, expected: tuple[str, ...]) -> None:
        present = set(self.obj)
        missing = [k for k in expected if k not in present]
        unknown = sorted(present - set(expected))
        if missing:
            raise self.fail(f"missing fields: {', '.join(missing)}")
        if unknown:
            raise self.fail(f"unknown fields: {', '.join(unknown)}")

    def str_field(self, key: str, *, required_nonempty: bool = False) -> str:
        value = self.obj[key]
        if not isinstance(value, str):
            raise self.fail(f"field {key!r} must be a string")
        if required_nonempty and not value:
            raise self.fail(f"field {key!r} must be non-empty")
        return value

    def str_list_field(self, key: str) -> list[str]:
        value = self.obj[key]
        if not isinstance(value, list) or any(
            not isinstance(v, str) or not v for v in value
        ):
            raise self.fail(f"field {key!r} must be a list of non-empty strings")
        return value

    def int_field(self, key: str) -> int:
        value = self.obj[key]
        if isinstance(value, bool) or not isinstance(value, int):
            raise self.fail(f"field {key!r} must be an integer")
        return value

    def timestamp_field(self, key: str) -> datetime:
        raw = self.str_field(key, required_nonempty=True)
        try:
            return parse_timestamp(raw)
        except ValueError as exc:
            raise self.fail(f"field {key!r}: {exc}") from None


def _iter_records(root: Path, filename: str):
    path = root / filename
    if not path.is_file():
        raise ParseError(filename, 0, "file not found")
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            try:
                obj = json.loads(stripped)
            except json.JSONDecodeError as exc:
                raise ParseError(filename, lineno, f"invalid JSON: {exc.msg}") from None
            if not isinstance(obj, dict):
                raise ParseError(filename, lineno, "record must be a JSON object")
            yield _Record(filename, lineno, obj)


def load_corpus(root_path: str | Path) -> CorpusSnapshot:
    """Load and validate a corpus directory into an immutable snapshot."""
    root = Path(root_path)

    users: list[User] = []
    for rec in _iter_records(root, USERS_FILE):
        rec.check_fields(("id", "name", "keywords", "created_at"))
        users.append(
            User(
                id=rec.str_field("id", required_nonempty=True),
                name=rec.str_field("name"),
                declared_keywords=text.normalize_keywords(rec.str_list_field("keywords")),
                created_at=rec.timestamp_field("created_at"),
            )
        )

    edges: set[FriendEdge] = set()
    for rec in _iter_records(root, FRIENDS_FILE):
        rec.check_fields(("a", "b"))
        a = rec.str_field("a", required_nonempty=True)
        b = rec.str_field("b", required_nonempty=True)
        if a == b:
            raise rec.fail("friend edge endpoints must differ")
        edges.add(FriendEdge.canonical(a, b))

    ros: list[ResearchObject] = []
    for rec in _iter_records(root, ROS_FILE):
        rec.check_fields(
            ("id", "title", "description", "creators", "tags", "resources", "created_at")
        )
        creators = rec.str_list_field("creators")
        if not creators:
            raise rec.fail("field 'creators' must be non-empty")
        resources = rec.str_list_field("resources")
        if len(resources) != len(set(resources)):
            raise rec.fail("field 'resources' contains duplicates")
        ros.append(
            ResearchObject(
                id=rec.str_field("id", required_nonempty=True),
                title=rec.str_field("title"),
                description=rec.str_field("description"),
                creators=tuple(creators),
                tags=tuple(rec.str_list_field("tags")),
                resources=tuple(resources),
                created_at=rec.timestamp_field("created_at"),
            )
        )

    resources: list[Resource] = []
    for rec in _iter_records(root, RESOURCES_FILE):
        rec.check_fields(("id", "title", "kind", "creators", "tags"))
        kind = rec.str_field("kind")
        if kind not in RESOURCE_KINDS:
            raise rec.fail(f"field 'kind' must be one of {', '.join(RESOURCE_KINDS)}")
        resources.append(
            Resource(
                id=rec.str_field("id", required_nonempty=True),
                title=rec.str_field("title"),
                kind=kind,
                creators=tuple(rec.str_list_field("creators")),
                tags=tuple(rec.str_list_field("tags")),
            )
        )

    raw_ratings: list[Rating] = []
    for rec in _iter_records(root, RATINGS_FILE):
        rec.check_fields(("user", "item", "value", "at"))
        value = rec.int_field("value")
        if not 1 <= value <= 5:
            raise rec.fail("field 'value' must be in 1..5")
        raw_ratings.append(
            Rating(
                user=rec.str_field("user", required_nonempty=True),
                item=rec.str_field("item", required_nonempty=True),
                value=value,
                at=rec.timestamp_field("at"),
            )
        )

    _check_unique_ids(users, ros, resources)
    ratings = _dedupe_ratings(raw_ratings)

    snapshot = CorpusSnapshot.build(
        users=users,
        ros=ros,
        resources=resources,
        ratings=ratings,
        friend_edges=sorted(edges),
    )
    _check_closure(snapshot)
    return snapshot


def _check_unique_ids(
    users: list[User], ros: list[ResearchObject], resources: list[Resource]
) -> None:
    for entity_class, entities in (("user", users), ("ro", ros), ("resource", resources)):
        seen: set[str] = set()
        for entity in entities:
            if entity.id in seen:
                raise DuplicateIdError(entity_class, entity.id)
            seen.add(entity.id)
    # RO and resource ids share the rating "item" namespace, so a cross-class
    # collision would make item references ambiguous.
    collision = {r.id for r in ros} & {r.id for r in resources}
    if collision:
        raise DuplicateIdError("item", sorted(collision)[0])


def _dedupe_ratings(raw: list[Rating]) -> list[Rating]:
    # Latest timestamp wins; on equal timestamps the later file line wins.
    chosen: dict[tuple[str, str], Rating] = {}
    for rating in raw:
        key = (rating.user, rating.item)
        current = chosen.get(key)
        if current is None or rating.at >= current.at:
            chosen[key] = rating
    return [chosen[key] for key in sorted(chosen)]


def _check_closure(snapshot: CorpusSnapshot) -> None:
    dangling = [
        v.rule for v in _closure_violations(snapshot)
    ]
    if dangling:
        raise IntegrityError(dangling)


def _closure_violations(snapshot: CorpusSnapshot) -> list[Violation]:
    out: list[Violation] = []

    def missing_user(entity: str, field: str, user_id: str) -> Violation:
        return Violation(entity, field, f"{entity}: {field} {user_id!r} is not a known user")

    for ro in snapshot.ros.values():
        for creator in ro.creators:
            if creator not in snapshot.users:
                out.append(missing_user(ro.id, "creators", creator))
        for resource_id in ro.resources:
            if resource_id not in snapshot.resources:
                out.append(
                    Violation(
                        ro.id,
                        "resources",
                        f"{ro.id}: resource {resource_id!r} is not a known resource",
                    )
                )
    for resource in snapshot.resources.values():
        for creator in resource.creators:
            if creator not in snapshot.users:
                out.append(missing_user(resource.id, "creators", creator))
    for rating in snapshot.ratings:
        if rating.user not in snapshot.users:
            out.append(
                Violation(
                    f"rating({rating.user},{rating.item})",
                    "user",
                    f"rating: user {rating.user!r} is not a known user",
                )
            )
        if not snapshot.has_item(rating.item):
            out.append(
                Violation(
                    f"rating({rating.user},{rating.item})",
                    "item",
                    f"rating: item {rating.item!r} is not a known item",
                )
            )
    for edge in snapshot.friend_edges:
        for endpoint in (edge.a, edge.b):
            if endpoint not in snapshot.users:
                out.append(
                    Violation(
                        f"friend({edge.a},{edge.b})",
                        "endpoint",
                        f"friend edge: user {endpoint!r} is not a known user",
                    )
                )
    return out


def validate(snapshot: CorpusSnapshot) -> list[Violation]:
    """Check every type invariant; an empty list means the snapshot is valid."""
    out: list[Violation] = []

    for key, user in snapshot.users.items():
        if not user.id:
            out.append(Violation(key or "<empty>", "id", "user id must be non-empty"))
        if key != user.id:
            out.append(Violation(key, "id", "user map key does not match entity id"))
        if text.normalize_keywords(list(user.declared_keywords)) != user.declared_keywords:
            out.append(
                Violation(user.id, "declared_keywords", "keywords must be normalized and deduplicated")
            )

    for key, ro in snapshot.ros.items():
        if not ro.id:
            out.append(Violation(key or "<empty>", "id", "ro id must be non-empty"))
        if key != ro.id:
            out.append(Violation(key, "id", "ro map key does not match entity id"))
        if not ro.creators:
            out.append(Violation(ro.id, "creators", "ro must have at least one creator"))
        if len(ro.resources) != len(set(ro.resources)):
            out.append(Violation(ro.id, "resources", "ro resource list contains duplicates"))

    for key, resource in snapshot.resources.items():
        if not resource.id:
            out.append(Violation(key or "<empty>", "id", "resource id must be non-empty"))
        if key != resource.id:
            out.append(Violation(key, "id", "resource map key does not match entity id"))
        if resource.kind not in RESOURCE_KINDS:
            out.append(
                Violation(resource.id, "kind", f"kind must be one of {', '.join(RESOURCE_KINDS)}")
            )

    if snapshot.ros.keys() & snapshot.resources.keys():
        for item_id in sorted(snapshot.ros.keys() & snapshot.resources.keys()):
            out.append(Violation(item_id, "id", "id used by both an ro and a resource"))

    seen_pairs: set[tuple[str, str]] = set()
    duplicate_pairs: set[tuple[str, str]] = set()
    for rating in snapshot.ratings:
        pair = (rating.user, rating.item)
        if pair in seen_pairs:
            duplicate_pairs.add(pair)
        seen_pairs.add(pair)
        if not 1 <= rating.value <= 5:
            out.append(
                Violation(f"rating{pair}", "value", "rating value must be in 1..5")
            )
    for pair in sorted(duplicate_pairs):
        out.append(
            Violation(f"rating{pair}", "user+item", "at most one rating per (user, item) pair")
        )

    seen_edges: set[FriendEdge] = set()
    for edge in snapshot.friend_edges:
        name = f"friend({edge.a},{edge.b})"
        if edge.a == edge.b:
            out.append(Violation(name, "a,b", "friend edge endpoints must differ (a != b)"))
        elif edge.a > edge.b:
            out.append(Violation(name, "a,b", "friend edge must be stored canonically (a < b)"))
        if edge in seen_edges:
            out.append(Violation(name, "a,b", "duplicate friend edge"))
        seen_edges.add(edge)

    out.extend(_closure_violations(snapshot))

    rebuilt = CorpusSnapshot.build(
        users=list(snapshot.users.values()),
        ros=list(snapshot.ros.values()),
        resources=list(snapshot.resources.values()),
        ratings=list(snapshot.ratings),
        friend_edges=list(snapshot.friend_edges),
    )
    if (
        rebuilt.ratings_by_user != snapshot.ratings_by_user
        or rebuilt.ratings_by_item != snapshot.ratings_by_item
        or rebuilt.friends_adjacency != snapshot.friends_adjacency
        or rebuilt.items_by_creator != snapshot.items_by_creator
        or rebuilt.packs_by_resource != snapshot.packs_by_resource
    ):
        out.append(Violation("snapshot", "indexes", "derived indexes inconsistent with base maps"))

    return out


# -- canonical serialization (golden-file format) ---------------------------


def serialize_corpus(snapshot: CorpusSnapshot) -> dict[str, str]:
    """Render the snapshot back into the five JSONL file texts.

    Records are sorted by id (ratings by (user, item), friends by (a, b));
    keys keep the documented order, so equal corpora serialize identically.
    """

    def lines_to_text(lines: list[str]) -> str:
        return "".join(line + "\n" for line in lines)

    users = [
        json.dumps(
            {
                "id": u.id,
                "name": u.name,
                "keywords": list(u.declared_keywords),
                "created_at": format_timestamp(u.created_at),
            }
        )
        for u in sorted(snapshot.users.values(), key=lambda u: u.id)
    ]
    friends = [
        json.dumps({"a": e.a, "b": e.b})
        for e in sorted(snapshot.friend_edges)
    ]
    ros = [
        json.dumps(
            {
                "id": r.id,
                "title": r.title,
                "description": r.description,
                "creators": list(r.creators),
                "tags": list(r.tags),
                "resources": list(r.resources),
                "created_at": format_timestamp(r.created_at),
            }
        )
        for r in sorted(snapshot.ros.values(), key=lambda r: r.id)
    ]
    resources = [
        json.dumps(
            {
                "id": r.id,
                "title": r.title,
                "kind": r.kind,
                "creators": list(r.creators),
                "tags": list(r.tags),
            }
        )
        for r in sorted(snapshot.resources.values(), key=lambda r: r.id)
    ]
    ratings = [
        json.dumps(
            {
                "user": r.user,
                "item": r.item,
                "value": r.value,
                "at": format_timestamp(r.at),
            }
        )
        for r in sorted(snapshot.ratings, key=lambda r: (r.user, r.item))
    ]
    return {
        USERS_FILE: lines_to_text(users),
        FRIENDS_FILE: lines_to_text(friends),
        ROS_FILE: lines_to_text(ros),
        RESOURCES_FILE: lines_to_text(resources),
        RATINGS_FILE: lines_to_text(ratings),
    }


def write_corpus(snapshot: CorpusSnapshot, out_dir: str | Path) -> None:
    """Write the canonical five-file serialization into a directory."""
    root = Path(out_dir)
    root.mkdir(parents=True, exist_ok=True)
    for filename, body in serialize_corpus(snapshot).items():
        with (root / filename).open("w", encoding="utf-8", newline="\n") as fh:
            fh.write(body)
