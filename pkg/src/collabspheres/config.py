"""Engine configuration: combiner weights, neighborhood sizes, capacities."""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace

from .content import (
    DEFAULT_RATED_FACTOR,
    DEFAULT_RATING_THRESHOLD,
    FieldBoosts,
)
from .recommendation import Source
from .social import DEFAULT_COAUTHOR_WEIGHT, DEFAULT_FRIEND_WEIGHT


@dataclass(frozen=True)
class CombinerWeights:
    """Per-source weights for the straight-weighted combiner, kept normalized."""

    cf: float = 1.0
    social: float = 1.0
    content: float = 1.0

    def __post_init__(self):
        if min(self.cf, self.social, self.content) < 0:
            raise ValueError("combiner weights must be >= 0")
        total = self.cf + self.social + self.content
        if total <= 0:
            raise ValueError("at least one combiner weight must be positive")
        object.__setattr__(self, "cf", self.cf / total)
        object.__setattr__(self, "social", self.social / total)
        object.__setattr__(self, "content", self.content / total)

    def weight(self, source: Source) -> float:
        return {Source.CF: self.cf, Source.SOCIAL: self.social, Source.CONTENT: self.content}[
            source
        ]


@dataclass(frozen=True)
class EngineConfig:
    cf_k: int = 10
    combiner: CombinerWeights = field(default_factory=CombinerWeights)
    theta: float = 0.5
    white_capacity: int = 16
    gray_capacity: int = 8
    friend_weight: float = DEFAULT_FRIEND_WEIGHT
    coauthor_weight: float = DEFAULT_COAUTHOR_WEIGHT
    direct_blend: float = 0.5
    jaccard_blend: float = 0.5
    boosts: FieldBoosts = field(default_factory=FieldBoosts)
    rating_threshold: int = DEFAULT_RATING_THRESHOLD
    rated_factor: float = DEFAULT_RATED_FACTOR
    gray_cf_weight: float = 0.5
    gray_content_weight: float = 0.5

    def __post_init__(self):
        if self.cf_k < 1:
            raise ValueError("cf_k must be >= 1")
        if not 0 < self.theta <= 1:
            raise ValueError("theta must be in (0, 1]")
        if self.white_capacity < 0 or self.gray_capacity < 0:
            raise ValueError("sphere capacities must be >= 0")

    @classmethod
    def from_dict(cls, data: dict) -> "EngineConfig":
        """Build a config from a JSON object; unknown keys are rejected."""
        if not isinstance(data, dict):
            raise ValueError("config must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
        kwargs = dict(data)
        if "combiner" in kwargs:
            kwargs["combiner"] = CombinerWeights(**kwargs["combiner"])
        if "boosts" in kwargs:
            kwargs["boosts"] = FieldBoosts(**kwargs["boosts"])
        return cls(**kwargs)

    def with_updates(self, **kwargs) -> "EngineConfig":
        return replace(self, **kwargs)


DEFAULT_CONFIG = EngineConfig()
