"""The d, pi and eta functions, m for non-epsilon ordinals, and the divisibility test
for alpha <_1 alpha + xi."""

from __future__ import annotations

from typing import Optional

from .ordinal import (
    ONE,
    ZERO,
    Ord,
    OrdinalError,
    _mk,
    add,
    cnf,
    is_epsilon,
    is_principal,
    last_exponent,
    leading_exponent,
    left_subtract,
    mul,
    next_epsilon,
    omega_pow,
)


def d_of(q: Ord) -> Ord:
    """Last CNF exponent of Q when q = w^Q is principal, else 0."""
    if not is_principal(q):
        return ZERO
    Q = leading_exponent(q)
    if not Q:
        return ZERO
    return last_exponent(Q)


def pi_of(t: Ord) -> Ord:
    if not t:
        raise OrdinalError("pi is undefined at 0")
    return omega_pow(leading_exponent(t))


def pi_plus_d(t: Ord) -> Ord:
    p = pi_of(t)
    return add(p, d_of(p))


def eta_of(t: Ord) -> Ord:
    if not t:
        raise OrdinalError("eta is undefined at 0")
    return max(t, pi_plus_d(t))


def omega_divides(xi: Ord, A: Ord) -> Optional[Ord]:
    """The s with A = w^xi * s, or None when w^xi does not divide A on the left."""
    if not A:
        return ZERO
    quotient = []
    for e, c in cnf(A):
        rest = left_subtract(xi, e)
        if rest is None:
            return None
        quotient.append((rest, c))
    s = _mk(quotient)
    return s if mul(omega_pow(xi), s) == A else None


def wilken_le1_plus(alpha: Ord, xi: Ord) -> bool:
    """Decide alpha <_1 alpha + xi for 1 <= xi < alpha."""
    if not (ONE <= xi < alpha):
        raise OrdinalError(f"xi = {xi} must satisfy 1 <= xi < {alpha}")
    if not is_principal(alpha):
        return False
    A = leading_exponent(alpha)
    s = omega_divides(xi, A)
    return s is not None and bool(s)


def m_non_epsilon(alpha: Ord) -> Ord:
    """The largest beta with alpha <=_1 beta, for alpha >= 1 not an epsilon."""
    if not alpha:
        raise OrdinalError("m_non_epsilon needs alpha >= 1")
    if is_epsilon(alpha):
        raise OrdinalError(f"{alpha} is an epsilon number; use the relation engine")
    terms = cnf(alpha)
    if len(terms) > 1 or terms[0][1] > 1:
        return alpha
    A = terms[0][0]
    if not A:
        return alpha
    return add(alpha, last_exponent(A))


def _check_interval(t: Ord, alpha: Ord) -> None:
    if not is_epsilon(alpha):
        raise OrdinalError(f"{alpha} is not an epsilon number")
    if not (alpha < t < next_epsilon(alpha)):
        raise OrdinalError(f"{t} is not in ({alpha}, {next_epsilon(alpha)})")


def m_interval(t: Ord, alpha: Ord) -> Ord:
    _check_interval(t, alpha)
    if not is_principal(t):
        return t
    return eta_of(t)


def le1_same_interval(b: Ord, g: Ord, alpha: Ord) -> bool:
    _check_interval(b, alpha)
    _check_interval(g, alpha)
    return b <= g <= m_interval(b, alpha)
