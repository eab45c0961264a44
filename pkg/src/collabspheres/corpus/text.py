"""Deterministic term normalization shared by ingest and the recommenders.

Rules: lowercase, split on any non-alphanumeric character, drop terms
shorter than two characters, drop stopwords. The stopword list ships as a
versioned data file next to this module.
"""

from __future__ import annotations

import re
from functools import lru_cache
from pathlib import Path

_SPLIT = re.compile(r"[\W_]+", re.UNICODE)
_MIN_TERM_LENGTH = 2


@lru_cache(maxsize=1)
def stopwords() -> frozenset[str]:
    """Load the embedded stopword list (comment and blank lines ignored)."""
    path = Path(__file__).with_name("stopwords.txt")
    words = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.append(line)
    return frozenset(words)


def terms(text: str) -> list[str]:
    """Normalize free text into a list of terms, repeats preserved."""
    stop = stopwords()
    out = []
    for raw in _SPLIT.split(text.casefold()):
        if len(raw) >= _MIN_TERM_LENGTH and raw not in stop:
            out.append(raw)
    return out


def normalize_keywords(raw: list[str]) -> tuple[str, ...]:
    """Normalize declared keywords: flatten, dedupe, keep first-seen order."""
    seen: dict[str, None] = {}
    for entry in raw:
        for term in terms(entry):
            seen.setdefault(term)
    return tuple(seen)
