"""The Recommendation record: the unit every recommender emits."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum


class Source(str, Enum):
    CF = "CF"
    SOCIAL = "SOCIAL"
    CONTENT = "CONTENT"
    COMBINED = "COMBINED"
    INFERRED_PACK = "INFERRED_PACK"


ITEM_KINDS = ("user", "ro", "resource")


@dataclass(frozen=True)
class ItemRef:
    """Typed reference to a user, research object or resource."""

    kind: str
    id: str

    def __post_init__(self):
        if self.kind not in ITEM_KINDS:
            raise ValueError(f"unknown item kind {self.kind!r}")


def stars_for_strength(strength: float) -> int:
    """Map a [0, 1] strength to 0..5 stars by round-half-up of strength*5."""
    return max(0, min(5, math.floor(strength * 5 + 0.5)))


@dataclass(frozen=True)
class Recommendation:
    subject: str
    item: ItemRef
    strength: float
    source: Source
    explanation: str
    stars: int = field(init=False)

    def __post_init__(self):
        if not math.isfinite(self.strength) or not 0.0 <= self.strength <= 1.0:
            raise ValueError(f"strength must be a finite value in [0, 1], got {self.strength!r}")
        if self.item.kind == "user" and self.item.id == self.subject:
            raise ValueError("a recommendation cannot target its own subject")
        object.__setattr__(self, "stars", stars_for_strength(self.strength))
