"""Deterministic synthetic corpora for tests and benchmarks.

For a fixed seed the generated snapshot serializes byte-for-byte
identically; names and tags come from a fixed embedded vocabulary.
"""

from __future__ import annotations

import random
from datetime import datetime, timedelta, timezone

from .model import CorpusSnapshot, FriendEdge, Rating, ResearchObject, Resource, User

TERMS = (
    "alignment", "annotation", "astronomy", "bayesian", "benchmark",
    "bioinformatics", "biodiversity", "calibration", "cardiology", "chemistry",
    "climate", "clustering", "corpus", "dataset", "diabetes",
    "ecology", "epidemiology", "genomics", "geospatial", "imaging",
    "inference", "linguistics", "metabolomics", "microarray", "microscopy",
    "modeling", "neuroscience", "ontology", "pathways", "phylogenetics",
    "physics", "pipeline", "proteomics", "provenance", "regression",
    "robotics", "sampling", "seismology", "sensors", "sequencing",
    "simulation", "spectroscopy", "statistics", "taxonomy", "telemetry",
    "toxicology", "transcriptomics", "validation", "visualization", "workflows",
)

FIRST_NAMES = (
    "Ada", "Alan", "Barbara", "Carl", "Dana", "Edgar", "Flora", "Grace",
    "Hugo", "Ines", "Jonas", "Karen", "Linus", "Marta", "Nils", "Olga",
    "Pavel", "Rosa", "Sofia", "Tomas",
)

LAST_NAMES = (
    "Alder", "Bryant", "Castro", "Dietz", "Engel", "Fischer", "Garza",
    "Holm", "Ibarra", "Jensen", "Koch", "Lindqvist", "Moretti", "Novak",
    "Okafor", "Paz", "Quinn", "Rossi", "Sato", "Varga",
)

RESOURCE_KIND_WEIGHTS = (("workflow", 0.45), ("file", 0.30), ("document", 0.15), ("other", 0.10))

_BASE_TIME = datetime(2024, 1, 1, tzinfo=timezone.utc)


def _pick_kind(rng: random.Random) -> str:
    roll = rng.random()
    acc = 0.0
    for kind, weight in RESOURCE_KIND_WEIGHTS:
        acc += weight
        if roll < acc:
            return kind
    return RESOURCE_KIND_WEIGHTS[-1][0]


def _title(rng: random.Random) -> str:
    words = rng.sample(TERMS, 2)
    return " ".join(w.capitalize() for w in words)


def generate_synthetic(
    seed: int, n_users: int, n_ros: int, n_resources: int
) -> CorpusSnapshot:
    """Generate a referentially closed snapshot, deterministic per seed."""
    if min(n_users, n_ros, n_resources) < 0:
        raise ValueError("entity counts must be >= 0")
    if n_ros > 0 and n_users == 0:
        raise ValueError("research objects need at least one user as creator")

    rng = random.Random(seed)
    tick = 0

    def next_time() -> datetime:
        nonlocal tick
        tick += 1
        return _BASE_TIME + timedelta(minutes=tick)

    users: list[User] = []
    for i in range(n_users):
        name = f"{rng.choice(FIRST_NAMES)} {rng.choice(LAST_NAMES)}"
        keywords = tuple(sorted(rng.sample(TERMS, rng.randint(0, 4))))
        users.append(
            User(
                id=f"users/{i + 1}",
                name=name,
                declared_keywords=keywords,
                created_at=next_time(),
            )
        )
    user_ids = [u.id for u in users]

    edges: set[FriendEdge] = set()
    if n_users >= 2:
        target = min(2 * n_users, n_users * (n_users - 1) // 2)
        attempts = 0
        while len(edges) < target and attempts < 20 * target:
            attempts += 1
            a, b = rng.sample(user_ids, 2)
            edges.add(FriendEdge.canonical(a, b))

    resources: list[Resource] = []
    for i in range(n_resources):
        creators = tuple(rng.sample(user_ids, min(rng.randint(0, 2), n_users)))
        resources.append(
            Resource(
                id=f"resources/{i + 1}",
                title=_title(rng),
                kind=_pick_kind(rng),
                creators=creators,
                tags=tuple(rng.sample(TERMS, rng.randint(1, 4))),
            )
        )
    resource_ids = [r.id for r in resources]

    ros: list[ResearchObject] = []
    for i in range(n_ros):
        creators = tuple(rng.sample(user_ids, rng.randint(1, min(3, n_users))))
        members = tuple(rng.sample(resource_ids, min(rng.randint(0, 5), n_resources)))
        description = " ".join(rng.sample(TERMS, rng.randint(3, 8)))
        ros.append(
            ResearchObject(
                id=f"ros/{i + 1}",
                title=_title(rng),
                description=description,
                creators=creators,
                tags=tuple(rng.sample(TERMS, rng.randint(1, 4))),
                resources=members,
                created_at=next_time(),
            )
        )

    item_ids = [r.id for r in ros] + resource_ids
    ratings: list[Rating] = []
    rated: set[tuple[str, str]] = set()
    if item_ids:
        for user_id in user_ids:
            for item_id in rng.sample(item_ids, min(rng.randint(0, 6), len(item_ids))):
                if (user_id, item_id) in rated:
                    continue
                rated.add((user_id, item_id))
                ratings.append(
                    Rating(
                        user=user_id,
                        item=item_id,
                        value=rng.randint(1, 5),
                        at=next_time(),
                    )
                )

    return CorpusSnapshot.build(
        users=users,
        ros=ros,
        resources=resources,
        ratings=sorted(ratings, key=lambda r: (r.user, r.item)),
        friend_edges=sorted(edges),
    )
