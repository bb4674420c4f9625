"""Run configuration shared by the CLI and the experiment scripts."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .groups import Caps
from .series import DEFAULT_TRUNC

METHODS = ("order", "noether", "both")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    trunc: int = DEFAULT_TRUNC
    depth: int = 12
    ball: int = 3
    jet: int = 1
    method: str = "both"
    caps: Caps = field(default_factory=Caps)
    series: int = 1
    direction: tuple = None  # (a, b) for the line {a x + b y = 0}
    table: bool = False

    def __post_init__(self):
        if self.trunc < 1:
            raise ConfigError("truncation must be >= 1")
        if self.jet < 1 or self.jet > self.trunc:
            raise ConfigError("need 1 <= jet level <= truncation")
        if self.depth < 1:
            raise ConfigError("depth must be >= 1")
        if self.ball < 0 or self.series < 1:
            raise ConfigError("ball radius must be >= 0 and series depth >= 1")
        if self.method not in METHODS:
            raise ConfigError(f"method must be one of {', '.join(METHODS)}")

    def with_(self, **kw):
        return replace(self, **kw)


def parse_caps(text: str) -> Caps:
    """``words=5000,seconds=30,witnesses=8`` -> Caps."""
    keys = {"words": "max_words", "seconds": "max_seconds", "witnesses": "max_witnesses"}
    kw = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        k, _, v = part.partition("=")
        if k not in keys or not v:
            raise ConfigError(f"bad cap {part!r}; use words=, seconds=, witnesses=")
        kw[keys[k]] = float(v) if k == "seconds" else int(v)
    return Caps(**kw)
