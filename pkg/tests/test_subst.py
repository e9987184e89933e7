import pytest
from hypothesis import given, settings, strategies as st

from epswb import ONE, OMEGA, ZERO, add, eps, mul, nat, next_epsilon, omega_pow, parse
from epswb.ordinal import OrdinalError
from epswb.oracle import random_below_eps
from epswb.subst import FinOrdSet, MDomainError, ep_set, in_M, subst, subst_map

import random

E0, E1, E2, E5 = eps(0), eps(1), eps(2), eps(5)


def test_ep_set():
    assert ep_set(E2) == {E2}
    assert ep_set(OMEGA) == set()
    assert ep_set(ZERO) == set()
    assert ep_set(nat(4)) == set()
    # the raw example sum collapses to e(1)*2, so the exponent term is listed first
    assert ep_set(add(mul(E1, nat(2)), omega_pow(add(E0, ONE)))) == {E0, E1}
    assert ep_set(add(omega_pow(add(E0, ONE)), mul(E1, nat(2)))) == {E1}


def test_subst_examples():
    assert subst(E0, E0, E1) == E1
    assert subst(nat(5), E0, E1) == nat(5)
    assert subst(parse("w^(e(0)+1)+3"), E0, E1) == parse("w^(e(1)+1)+3")
    assert subst(ZERO, E0, E1) == ZERO
    with pytest.raises(OrdinalError):
        subst(ONE, OMEGA, E1)


def test_in_M():
    assert in_M(mul(E0, nat(2)), E0, E5)
    assert not in_M(E1, E0, E5)
    assert not in_M(omega_pow(add(E2, E1)), E2, E1)


def test_subst_map():
    w = subst_map([ONE, E0, add(E0, ONE)], E0, E1)
    assert w.pairs == {ONE: ONE, E0: E1, add(E0, ONE): add(E1, ONE)}
    assert w.fixed_below == E0
    assert subst_map([], E0, E1).pairs == {}
    x = mul(E0, nat(2))
    assert subst_map([x], E0, E0).pairs == {x: x}
    with pytest.raises(MDomainError) as info:
        subst_map([E2], E0, E1)
    assert info.value.element == E2


def test_fin_ord_set():
    s = FinOrdSet([E1, ONE, E1, ZERO])
    assert list(s) == [ZERO, ONE, E1]
    assert s.max() == E1 and len(s) == 3 and E1 in s


ALPHAS = [E1, E2, eps(OMEGA), eps(mul(OMEGA, OMEGA))]


@st.composite
def m_pairs(draw):
    alpha = draw(st.sampled_from(ALPHAS))
    e = draw(st.sampled_from([x for x in ALPHAS + [E5] if x != alpha]))
    atoms = [x for x in (E0, E1) if x < min(alpha, e)]
    rng = random.Random(draw(st.integers(0, 2**32)))
    q = random_below_eps(rng, alpha, atoms)
    s = random_below_eps(rng, alpha, atoms)
    return q, s, alpha, e


@given(m_pairs())
@settings(max_examples=200)
def test_substitution_is_structure_preserving(case):
    q, s, alpha, e = case
    assert in_M(q, alpha, e) and in_M(s, alpha, e)
    h = lambda x: subst(x, alpha, e)
    assert (q < s) == (h(q) < h(s))
    assert h(add(q, s)) == add(h(q), h(s))
    assert h(omega_pow(s)) == omega_pow(h(s))
    assert h(s) < next_epsilon(e)
    assert subst(h(s), e, alpha) == s
    assert {x for x in ep_set(h(s)) if x < e} == {x for x in ep_set(s) if x < alpha}
