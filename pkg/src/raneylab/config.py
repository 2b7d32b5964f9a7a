"""Size caps. Caps are configuration; the hard limits below are not."""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import ConfigError, SizeCap

HARD_MAX_POSET = 8
HARD_MAX_ELEMENTS = 256

DEFAULT_MAX_POSET = 7
DEFAULT_MAX_ELEMENTS = 32
# exact-meet quantification covers every subset up to this many elements
ALL_SUBSETS_LIMIT = 12
# raw 2^|L| subset filtering is only used as an oracle up to this size
RAW_ORACLE_LIMIT = 8

ENV_MAX_ELEMENTS = "RANEY_MAX_ELEMENTS"


def max_elements() -> int:
    raw = os.environ.get(ENV_MAX_ELEMENTS)
    if raw is None or raw == "":
        return DEFAULT_MAX_ELEMENTS
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{ENV_MAX_ELEMENTS} must be an integer, got {raw!r}") from exc
    if not 1 <= value <= HARD_MAX_ELEMENTS:
        raise ConfigError(f"{ENV_MAX_ELEMENTS} must lie in 1..{HARD_MAX_ELEMENTS}")
    return value


def require_elements(n: int, what: str, cap: int | None = None) -> None:
    limit = max_elements() if cap is None else cap
    if n > limit:
        raise SizeCap(f"{what}: {n} elements exceeds cap {limit}")


@dataclass(frozen=True)
class Caps:
    max_poset: int = 5
    max_elements: int | None = None
    # universal-property spot checks enumerate frame maps; keep those frames tiny
    max_map_poset: int = 3
    max_space_points: int = 5

    def __post_init__(self) -> None:
        if not 0 <= self.max_poset <= HARD_MAX_POSET:
            raise ConfigError(f"max_poset must lie in 0..{HARD_MAX_POSET}")
        if self.max_elements is not None and not 1 <= self.max_elements <= HARD_MAX_ELEMENTS:
            raise ConfigError(f"max_elements must lie in 1..{HARD_MAX_ELEMENTS}")
        if self.max_map_poset > self.max_poset:
            object.__setattr__(self, "max_map_poset", self.max_poset)
        if self.max_space_points > HARD_MAX_POSET:
            raise ConfigError("max_space_points too large")

    @property
    def elements(self) -> int:
        return max_elements() if self.max_elements is None else self.max_elements
