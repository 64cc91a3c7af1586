"""Three-valued results: a finite count, ``math.inf``, or ``Unknown``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Unknown:
    """A value that could not be decided, with the reason why."""

    reason: str = "undetermined"

    def __str__(self):
        return f"unknown ({self.reason})"


INF = math.inf

Value = Union[int, float, Unknown]


def is_known(v) -> bool:
    return not isinstance(v, Unknown)


def value_to_json(v: Value):
    if isinstance(v, Unknown):
        return {"unknown": v.reason}
    if v == math.inf:
        return "infinite"
    return {"finite": int(v)}


def value_from_json(obj) -> Value:
    if obj == "infinite":
        return math.inf
    if isinstance(obj, dict) and len(obj) == 1:
        if "finite" in obj and isinstance(obj["finite"], int) and obj["finite"] >= 0:
            return obj["finite"]
        if "unknown" in obj and isinstance(obj["unknown"], str):
            return Unknown(obj["unknown"])
    raise ValueError(f"not a serialized value: {obj!r}")


def format_value(v: Value) -> str:
    if isinstance(v, Unknown):
        return str(v)
    return "infinite" if v == math.inf else str(v)
