from __future__ import annotations

import json
from pathlib import Path

import pytest

from collabspheres.corpus import generate_synthetic, load_corpus, write_corpus

GOLDEN_DIR = Path(__file__).parent / "golden"

# The standard desk-scale corpus used by golden and acceptance tests.
SEED42_ARGS = (42, 50, 120, 200)


@pytest.fixture(scope="session")
def seed42():
    return generate_synthetic(*SEED42_ARGS)


@pytest.fixture(scope="session")
def seed42_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("seed42")
    write_corpus(generate_synthetic(*SEED42_ARGS), root)
    return root


FIXTURE_USERS = [
    {"id": "users/1", "name": "Ada Alder", "keywords": ["proteomics", "workflows"],
     "created_at": "2024-01-01T00:00:00Z"},
    {"id": "users/2", "name": "Carl Castro", "keywords": ["genomics"],
     "created_at": "2024-01-01T01:00:00Z"},
    {"id": "users/3", "name": "Dana Dietz", "keywords": [],
     "created_at": "2024-01-01T02:00:00Z"},
]

FIXTURE_FRIENDS = [{"a": "users/1", "b": "users/2"}]

FIXTURE_ROS = [
    {"id": "ros/1", "title": "Proteomics Pipeline", "description": "mass spectrometry workflow",
     "creators": ["users/1"], "tags": ["proteomics"], "resources": ["resources/1", "resources/2"],
     "created_at": "2024-01-02T00:00:00Z"},
    {"id": "ros/2", "title": "Genome Atlas", "description": "sequencing study",
     "creators": ["users/2", "users/3"], "tags": ["genomics", "sequencing"],
     "resources": ["resources/3"], "created_at": "2024-01-02T01:00:00Z"},
]

FIXTURE_RESOURCES = [
    {"id": "resources/1", "title": "Spectra Cleaner", "kind": "workflow",
     "creators": ["users/1"], "tags": ["proteomics"]},
    {"id": "resources/2", "title": "Sample Sheet", "kind": "file",
     "creators": [], "tags": []},
    {"id": "resources/3", "title": "Alignment Runner", "kind": "workflow",
     "creators": ["users/2"], "tags": ["sequencing", "alignment"]},
]

FIXTURE_RATINGS = [
    {"user": "users/1", "item": "ros/2", "value": 4, "at": "2024-02-01T00:00:00Z"},
    {"user": "users/2", "item": "ros/1", "value": 5, "at": "2024-02-01T01:00:00Z"},
    {"user": "users/3", "item": "resources/1", "value": 3, "at": "2024-02-01T02:00:00Z"},
    {"user": "users/3", "item": "ros/1", "value": 4, "at": "2024-02-01T03:00:00Z"},
]


def write_fixture_corpus(
    root: Path,
    users=FIXTURE_USERS,
    friends=FIXTURE_FRIENDS,
    ros=FIXTURE_ROS,
    resources=FIXTURE_RESOURCES,
    ratings=FIXTURE_RATINGS,
) -> Path:
    root.mkdir(parents=True, exist_ok=True)
    for name, records in (
        ("users", users),
        ("friends", friends),
        ("ros", ros),
        ("resources", resources),
        ("ratings", ratings),
    ):
        body = "".join(json.dumps(record) + "\n" for record in records)
        (root / f"{name}.jsonl").write_text(body, encoding="utf-8")
    return root


@pytest.fixture
def fixture_corpus_dir(tmp_path):
    return write_fixture_corpus(tmp_path / "corpus")


@pytest.fixture
def fixture_snapshot(fixture_corpus_dir):
    return load_corpus(fixture_corpus_dir)
