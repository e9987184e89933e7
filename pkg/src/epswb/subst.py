"""Epsilon extraction, substitution of one epsilon by another, and the M(alpha, e) domain."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Optional, Tuple

from .ordinal import (
    ZERO,
    Ord,
    OrdinalError,
    add,
    is_epsilon,
    mul,
    nat,
    next_epsilon,
    omega_pow,
)


class FinOrdSet:
    """A finite, strictly sorted set of ordinals."""

    __slots__ = ("elements",)

    def __init__(self, items: Iterable[Ord] = ()):
        self.elements: Tuple[Ord, ...] = tuple(sorted(set(items)))

    def __iter__(self) -> Iterator[Ord]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in set(self.elements)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FinOrdSet):
            return self.elements == other.elements
        if isinstance(other, (set, frozenset, list, tuple)):
            return self.elements == FinOrdSet(other).elements
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.elements)

    def __or__(self, other: Iterable[Ord]) -> "FinOrdSet":
        return FinOrdSet(self.elements + tuple(other))

    def __le__(self, other: "FinOrdSet") -> bool:
        return set(self.elements) <= set(other.elements)

    def max(self) -> Optional[Ord]:
        return self.elements[-1] if self.elements else None

    def below(self, bound: Ord) -> "FinOrdSet":
        return FinOrdSet(x for x in self.elements if x < bound)

    def __repr__(self) -> str:
        return "{" + ", ".join(map(str, self.elements)) + "}"


@lru_cache(maxsize=1 << 16)
def _ep(x: Ord) -> frozenset:
    if is_epsilon(x):
        return frozenset((x,))
    out: frozenset = frozenset()
    for e, _ in x.terms:
        out |= _ep(e)
    return out


def ep_set(x: Ord) -> FinOrdSet:
    """The epsilon numbers occurring in the normal form of x."""
    return FinOrdSet(_ep(x))


def _check_eps(*xs: Ord) -> None:
    for x in xs:
        if not is_epsilon(x):
            raise OrdinalError(f"{x} is not an epsilon number")


@lru_cache(maxsize=1 << 16)
def _subst(x: Ord, alpha: Ord, e: Ord) -> Ord:
    if is_epsilon(x):
        return e if x == alpha else x
    result = ZERO
    for a, c in x.terms:
        part = e if a == alpha else omega_pow(_subst(a, alpha, e))
        result = add(result, mul(part, nat(c)) if c > 1 else part)
    return result


def subst(x: Ord, alpha: Ord, e: Ord) -> Ord:
    """x[alpha := e]: replace the epsilon atom alpha by e throughout x."""
    _check_eps(alpha, e)
    if alpha == e:
        return x
    return _subst(x, alpha, e)


def in_M(q: Ord, alpha: Ord, e: Ord) -> bool:
    """q < alpha^+ and every epsilon of q below alpha is also below e."""
    _check_eps(alpha, e)
    if not q < next_epsilon(alpha):
        return False
    return all(x < e for x in _ep(q) if x < alpha)


def ep_below(x: Ord, alpha: Ord) -> FinOrdSet:
    return FinOrdSet(y for y in _ep(x) if y < alpha)


def max_ep_below(x: Ord, alpha: Ord) -> Ord:
    """max(Ep(x) cap alpha), or 0 when empty."""
    below = [y for y in _ep(x) if y < alpha]
    return max(below) if below else ZERO


@dataclass(frozen=True)
class IsoWitness:
    pairs: Dict[Ord, Ord] = field(default_factory=dict)
    fixed_below: Ord = ZERO

    def __call__(self, x: Ord) -> Ord:
        return self.pairs[x]

    @property
    def domain(self) -> FinOrdSet:
        return FinOrdSet(self.pairs)


class MDomainError(OrdinalError):
    def __init__(self, element: Ord):
        super().__init__(f"{element} is outside M(alpha, e)")
        self.element = element


def subst_map(B: Iterable[Ord], alpha: Ord, e: Ord) -> IsoWitness:
    """The finite map b -> b[alpha := e] on B, checked against M(alpha, e)."""
    pairs = {}
    for b in B:
        if not in_M(b, alpha, e):
            raise MDomainError(b)
        pairs[b] = subst(b, alpha, e)
    return IsoWitness(pairs, alpha)
