"""Research-object corpus: domain model, ingest, queries and synthesis."""

from .loader import (
    CORPUS_FILES,
    Violation,
    load_corpus,
    serialize_corpus,
    validate,
    write_corpus,
)
from .model import (
    RESOURCE_KINDS,
    CorpusSnapshot,
    FriendEdge,
    Rating,
    RelationSets,
    ResearchObject,
    Resource,
    User,
    format_timestamp,
    parse_timestamp,
    relations,
)
from .synth import generate_synthetic

__all__ = [
    "CORPUS_FILES",
    "RESOURCE_KINDS",
    "CorpusSnapshot",
    "FriendEdge",
    "Rating",
    "RelationSets",
    "ResearchObject",
    "Resource",
    "User",
    "Violation",
    "format_timestamp",
    "generate_synthetic",
    "load_corpus",
    "parse_timestamp",
    "relations",
    "serialize_corpus",
    "validate",
    "write_corpus",
]
