"""Finite canonical covers: S_CNF, B(t), F(L), C1, C2, Y, C(delta), D(alpha, delta), Delta(alpha, B)."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, List, Set, Tuple

from .ordinal import (
    ONE,
    ZERO,
    Ord,
    OrdinalError,
    add,
    cnf,
    is_epsilon,
    is_principal,
    monomial,
    mul,
    nat,
    next_epsilon,
    omega_pow,
)
from .subst import FinOrdSet


def _principal_parts(x: Ord) -> List[Tuple[Ord, int]]:
    """(L_i, l_i) with x = L_1 l_1 + ... + L_n l_n and every L_i principal."""
    return [(omega_pow(e), c) for e, c in cnf(x)]


def _partial_sums(x: Ord) -> List[Ord]:
    out, acc = [], ZERO
    for e, c in cnf(x):
        acc = add(acc, monomial(e, c))
        out.append(acc)
    return out


@lru_cache(maxsize=1 << 14)
def _s_cnf(q: Ord) -> frozenset:
    if not q:
        return frozenset()
    out: Set[Ord] = set(_partial_sums(q))
    for e, c in cnf(q):
        out.add(monomial(e, c))
        if not is_epsilon(omega_pow(e)):
            out |= _s_cnf(e)
    return frozenset(out)


def s_cnf(q: Ord) -> FinOrdSet:
    return FinOrdSet(_s_cnf(q))


def b_t(t: Ord) -> FinOrdSet:
    """S_CNF(t) with every principal-times-finite member L*q adding L*1, ..., L*q."""
    out = set(_s_cnf(t))
    for x in _s_cnf(t):
        terms = cnf(x)
        if len(terms) == 1:
            e, c = terms[0]
            L = omega_pow(e)
            out.update(mul(L, nat(j)) for j in range(1, c + 1))
    return FinOrdSet(out)


def f_of(L: Ord) -> FinOrdSet:
    if not is_principal(L):
        raise OrdinalError(f"{L} is not additive principal")
    return FinOrdSet(_f(L))


@lru_cache(maxsize=1 << 14)
def _f(L: Ord) -> frozenset:
    if L == ONE or is_epsilon(L):
        return frozenset((L,))
    Z = cnf(L)[0][0]
    out: Set[Ord] = set()
    prefix = ZERO
    for V, v in cnf(Z):
        for j in range(1, v + 1):
            p = omega_pow(add(prefix, monomial(V, j)))
            out.add(p)
            out.add(add(p, V))
        prefix = add(prefix, monomial(V, v))
    return frozenset(out)


def c1(delta: Ord) -> FinOrdSet:
    out: Set[Ord] = set()
    for L, _ in _principal_parts(delta):
        if not is_epsilon(L):
            out |= _f(L)
    return FinOrdSet(out)


@lru_cache(maxsize=1 << 14)
def _c2(delta: Ord) -> frozenset:
    out: Set[Ord] = set(_partial_sums(delta))
    for L, c in _principal_parts(delta):
        out.update(mul(L, nat(j)) for j in range(1, c + 1))
    return frozenset(out)


def c2(delta: Ord) -> FinOrdSet:
    return FinOrdSet(_c2(delta))


def y_set(delta: Ord) -> FinOrdSet:
    out: Set[Ord] = set()
    for L, _ in _principal_parts(delta):
        if not is_epsilon(L):
            out.update(V for V, _ in cnf(cnf(L)[0][0]))
    return FinOrdSet(out)


@lru_cache(maxsize=1 << 14)
def _c(delta: Ord) -> frozenset:
    if not delta:
        return frozenset()
    first = c1(delta)
    out: Set[Ord] = set(first)
    for sigma in first:
        out |= _c2(sigma)
    out |= _c2(delta)
    for V in y_set(delta):
        out |= _c(V)
    return frozenset(out)


def c_cover(delta: Ord) -> FinOrdSet:
    return FinOrdSet(_c(delta))


def _check_alpha(alpha: Ord) -> None:
    if not is_epsilon(alpha):
        raise OrdinalError(f"{alpha} is not an epsilon number")


def d_cover(alpha: Ord, delta: Ord) -> FinOrdSet:
    _check_alpha(alpha)
    if not delta < next_epsilon(alpha):
        raise OrdinalError(f"{delta} is not below {next_epsilon(alpha)}")
    return FinOrdSet(_c(delta) | {alpha, mul(alpha, nat(2))})


def delta_cover(alpha: Ord, B: Iterable[Ord]) -> FinOrdSet:
    _check_alpha(alpha)
    top = next_epsilon(alpha)
    B = list(B)
    out: Set[Ord] = set(B)
    for delta in B:
        if not delta < top:
            raise OrdinalError(f"{delta} is not below {top}")
        if delta >= alpha:
            out |= set(d_cover(alpha, delta))
    return FinOrdSet(out)
