"""Verdicts and replayable certificates."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple, Union

from .ordinal import Ord

# depth of the empty index class
INF = "inf"

Depth = Union[Ord, str, None]


class Truth(enum.Enum):
    TRUE = "True"
    FALSE = "False"
    UNKNOWN = "Unknown"

    @classmethod
    def of(cls, b: bool) -> "Truth":
        return cls.TRUE if b else cls.FALSE

    def __bool__(self) -> bool:
        return self is Truth.TRUE


CERTIFIED = "certified"
EXTRAPOLATED = "extrapolated"


@dataclass(frozen=True, eq=False)
class Cert:
    """One reduction step; children are the premises it rests on."""

    rule: str
    alpha: Optional[Ord] = None
    s: Optional[Ord] = None
    depth: Depth = None
    value: Optional[bool] = None
    data: Dict[str, Any] = field(default_factory=dict)
    children: Tuple["Cert", ...] = ()

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def shape(self) -> tuple:
        return (self.rule, tuple(c.shape() for c in self.children))

    def to_json(self) -> dict:
        out: Dict[str, Any] = {"rule": self.rule}
        if self.alpha is not None:
            out["alpha"] = str(self.alpha)
        if self.s is not None:
            out["s"] = str(self.s)
        if self.depth is not None:
            out["depth"] = str(self.depth)
        if self.value is not None:
            out["value"] = self.value
        if self.data:
            out["data"] = {k: _jsonable(v) for k, v in sorted(self.data.items())}
        if self.children:
            out["children"] = [c.to_json() for c in self.children]
        return out

    def rules(self) -> set:
        out = {self.rule}
        for c in self.children:
            out |= c.rules()
        return out


def _jsonable(v: Any) -> Any:
    if isinstance(v, Ord):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return v


@dataclass(frozen=True, eq=False)
class Verdict:
    value: Truth
    exactness: str
    certificate: Cert
    fuel_used: int

    @property
    def certified(self) -> bool:
        return self.exactness == CERTIFIED and self.value is not Truth.UNKNOWN

    def to_json(self, query: Dict[str, Any]) -> dict:
        return {
            "schema_version": 1,
            "query": {k: _jsonable(v) for k, v in query.items()},
            "value": self.value.value,
            "exactness": self.exactness,
            "fuel_used": self.fuel_used,
            "certificate": self.certificate.to_json(),
        }

    def __str__(self) -> str:
        return f"{self.value.value} ({self.exactness})"


def unknown(used: int, reason: str = "fuel exhausted") -> Verdict:
    return Verdict(Truth.UNKNOWN, EXTRAPOLATED, Cert("OutOfFuel", data={"reason": reason}), used)
