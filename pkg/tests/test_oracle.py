import random

import pytest
from hypothesis import given, settings

from epswb import OMEGA, ONE, add, eps, mul, nat, omega_pow, parse
from epswb.engine import Engine
from epswb.oracle import (
    identity_witness,
    iso_check,
    le1_closed,
    lim_depth_oracle,
    lt1_succ_criterion,
    m_closed,
    m_iterated,
    min_iso,
    random_ord,
    subst_witness_search,
)
from epswb.ordinal import is_epsilon, succ
from epswb.subst import IsoWitness
from epswb.suites import SUITES, UnknownSuite, run_suite

from strategies import ords

W = OMEGA
E0, E1, EW = eps(0), eps(1), eps(W)


def test_identity_is_iso():
    B = [nat(3), E0, add(E1, ONE), mul(E1, nat(2))]
    assert iso_check(identity_witness(B)) == {"ok": True}


def test_collapse_map():
    w = IsoWitness({E1: E0, add(E1, ONE): add(E0, ONE)}, E1)
    assert iso_check(w)["ok"]


def test_swap_map_breaks_order():
    w = IsoWitness({E0: E1, E1: E0}, ONE)
    r = iso_check(w)
    assert not r["ok"] and r["kind"] == "order"


def test_plus_violation():
    w = IsoWitness({W: W, E0: E1, add(E0, W): add(E1, ONE)}, ONE)
    r = iso_check(w, check_omega_pow=False)
    assert not r["ok"] and r["kind"] == "plus"


def test_le1_violation():
    # eps_0 <=_1 eps_0*2 but eps_1 is not <=_1 eps_1*2+1
    w = IsoWitness({E0: E1, mul(E0, nat(2)): succ(mul(E1, nat(2)))}, ONE)
    r = iso_check(w, check_omega_pow=False)
    assert not r["ok"] and r["kind"] in {"le1", "plus"}


def test_witness_found():
    w = subst_witness_search(EW, [add(EW, ONE)])
    assert w is not None and iso_check(w)["ok"]
    assert is_epsilon(w.pairs[EW]) and w.pairs[EW] < EW


def test_witness_absent_with_enough_context():
    Z = [succ(mul(E1, nat(2))), E0]
    assert subst_witness_search(E1, Z) is None


def test_witness_below_alpha_is_identity():
    Z = [nat(2), E0, parse("w^w")]
    w = subst_witness_search(E1, Z)
    assert all(w.pairs[z] == z for z in Z)


def test_min_iso():
    r = min_iso(EW, [mul(EW, nat(2))])
    assert r["status"] == "ok" and r["minimum_is_substitution"]
    assert r["minimum_gamma"] == str(E1)
    a = eps(mul(W, W))
    r = min_iso(a, [succ(mul(a, nat(2)))])
    assert r["status"] == "ok" and r["minimum_gamma"] == str(EW)
    assert r["note"] == "minimum over pool" and not r["dominance_failures"]
    assert min_iso(EW, [EW], fuel=0)["status"] == "inconclusive"


@pytest.mark.parametrize("l,expected", [(1, True), (2, False), (3, False)])
def test_lt1_succ_criterion(l, expected):
    r = lt1_succ_criterion(omega_pow(mul(W, W)), nat(l))
    assert r["divisibility"] is expected and r["agree"]


def test_m_closed_matches_table():
    assert m_closed(eps(parse("w^w"))) == add(mul(eps(parse("w^w")), nat(2)), W)
    assert m_iterated(eps(nat(3))) == mul(eps(nat(3)), nat(2))
    assert lim_depth_oracle(parse("w^(w^2)")) == mul(W, W)
    assert m_closed(nat(0)) == nat(0)


@given(ords)
@settings(max_examples=60, deadline=None)
def test_engine_agrees_with_closed_form(x):
    if not is_epsilon(x):
        return
    m, v = Engine().m_of(x)
    if m is not None:
        assert m == m_closed(x)
        assert le1_closed(x, m) and not le1_closed(x, succ(m))


def test_random_ord_deterministic():
    a = [random_ord(random.Random(5)) for _ in range(3)]
    b = [random_ord(random.Random(5)) for _ in range(3)]
    assert a == b


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nope")
    assert "cnf-laws" in SUITES
