"""Fundamental sequences for limits t in (alpha, alpha^+), and the standard CNF
fundamental sequence of an index ordinal used for probe grids."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Set, Tuple

from .ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Ord,
    OrdinalError,
    _mk,
    add,
    cnf,
    eps,
    is_epsilon,
    is_limit,
    monomial,
    mul,
    nat,
    next_epsilon,
    omega_pow,
    pred_if_succ,
    succ,
)
from .eta import pi_of


@dataclass(frozen=True)
class FundSeq:
    """A lazily evaluated family (l_j) for 0 < j < index_bound."""

    index_bound: Ord
    fn: Callable[[Ord], Ord]
    t: Ord
    alpha: Ord
    case: str

    def eval(self, j: Ord) -> Ord:
        if not (ZERO < j < self.index_bound):
            raise OrdinalError(f"index {j} outside (0, {self.index_bound})")
        return self.fn(j)

    def __call__(self, j: Ord) -> Ord:
        return self.eval(j)


def _drop_one(terms: Tuple[Tuple[Ord, int], ...]) -> Ord:
    """The sum of the monomials with one copy of the last monomial removed."""
    e, c = terms[-1]
    head = list(terms[:-1])
    if c > 1:
        head.append((e, c - 1))
    return _mk(head)


def _build(t: Ord, alpha: Ord) -> Tuple[Ord, Callable[[Ord], Ord], str]:
    terms = cnf(t)
    if len(terms) > 1 or terms[0][1] > 1:
        base = _drop_one(terms)
        Tn = terms[-1][0]
        if Tn <= alpha:
            case = "tail<alpha" if Tn < alpha else "tail=alpha"
            return omega_pow(Tn), lambda j: add(base, j), case
        bound, inner, sub = _build(omega_pow(Tn), alpha)
        return bound, lambda j: add(base, inner(j)), "tail>alpha/" + sub
    T1 = terms[0][0]
    qterms = cnf(T1)
    Tpre = _drop_one(qterms)
    Qm = qterms[-1][0]
    if not Qm:
        return OMEGA, lambda j: mul(omega_pow(Tpre), j), "Qm=0"
    if Qm < alpha:
        p = pred_if_succ(Qm)
        if p is not None:
            step = omega_pow(p)
            return OMEGA, lambda j: omega_pow(add(Tpre, mul(step, j))), "Qm=succ"
        return Qm, lambda j: omega_pow(add(Tpre, omega_pow(j))), "Qm=limit"
    if Qm == alpha:
        return alpha, lambda j: omega_pow(add(Tpre, omega_pow(j))), "Qm=alpha"
    bound, inner, sub = _build(omega_pow(Qm), alpha)
    return bound, lambda j: omega_pow(add(Tpre, inner(j))), "Qm>alpha/" + sub


def _check(t: Ord, alpha: Ord) -> None:
    if not is_epsilon(alpha):
        raise OrdinalError(f"{alpha} is not an epsilon number")
    if not (alpha < t < next_epsilon(alpha)):
        raise OrdinalError(f"{t} is not in ({alpha}, {next_epsilon(alpha)})")
    if not is_limit(t):
        raise OrdinalError(f"{t} is not a limit")


def l_seq(t: Ord, alpha: Ord) -> FundSeq:
    _check(t, alpha)
    bound, fn, case = _build(t, alpha)
    return FundSeq(bound, fn, t, alpha, case)


def e_seq(t: Ord, alpha: Ord) -> FundSeq:
    """The sequence for the leading principal part of t."""
    p = pi_of(t)
    _check(p, alpha)
    bound, fn, case = _build(p, alpha)
    return FundSeq(bound, fn, p, alpha, case)


def sample(seq: FundSeq, indices: Iterable[Ord]) -> List[Ord]:
    return [seq.eval(j) for j in indices]


# probing


def subterms(x: Ord) -> Set[Ord]:
    out: Set[Ord] = set()
    stack = [x]
    while stack:
        y = stack.pop()
        if y in out:
            continue
        out.add(y)
        if is_epsilon(y):
            stack.append(y.index)
            continue
        terms = y.terms
        for k, (e, c) in enumerate(terms):
            stack.append(e)
            stack.append(monomial(e, c))
            stack.append(_mk(terms[k:]))
    return out


def dominating_candidates(bound: Ord, s: Ord, limit: int) -> List[Ord]:
    cands: Set[Ord] = set()
    for y in subterms(s):
        cands.update((y, succ(y), omega_pow(y), omega_pow(succ(y))))
    cands.update(nat(2**k) for k in range(32))
    cands.update(index_fs(bound, n) for n in range(1, 9) if is_limit(bound))
    good = sorted((j for j in cands if ZERO < j < bound), reverse=True)
    return good[:limit]


def find_dominating(seq: FundSeq, s: Ord, fuel: int = 64) -> Optional[Ord]:
    """Some index j with l_j > s, searched over at most `fuel` candidates."""
    for j in dominating_candidates(seq.index_bound, s, fuel):
        if seq.eval(j) > s:
            return j
    return None


def index_fs(i: Ord, n: int) -> Ord:
    """The n-th member of the standard fundamental sequence of a limit i."""
    if not is_limit(i):
        raise OrdinalError(f"{i} is not a limit")
    if is_epsilon(i):
        g = i.index
        if is_limit(g):
            return eps(index_fs(g, n))
        p = pred_if_succ(g)
        x = ONE if p is None else succ(eps(p))
        for _ in range(n):
            x = omega_pow(x)
        return x
    terms = i.terms
    base = _drop_one(terms)
    c = terms[-1][0]
    if is_epsilon(c):
        return add(base, index_fs(c, n))
    if is_limit(c):
        return add(base, omega_pow(index_fs(c, n)))
    return add(base, mul(omega_pow(pred_if_succ(c)), nat(n)))
