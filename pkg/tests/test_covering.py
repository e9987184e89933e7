import pytest
from hypothesis import given, settings

from epswb import ONE, OMEGA, ZERO, add, eps, nat, parse
from epswb.covering import b_t, c1, c2, c_cover, d_cover, delta_cover, f_of, s_cnf, y_set
from epswb.eta import eta_of
from epswb.ordinal import OrdinalError, cnf, monomial, succ

from strategies import small_ords

E0 = eps(0)
W = OMEGA


def S(*xs):
    return {parse(x) if isinstance(x, str) else x for x in xs}


def test_s_cnf():
    assert s_cnf(E0) == {E0}
    # literal unfolding: w is not listed because S_CNF(w*2+1) recurses into exponent 1 only
    assert s_cnf(parse("w*2+1")) == S("1", "w*2", "w*2+1")
    assert s_cnf(W) == S("w", "1")
    assert s_cnf(ZERO) == set()


def test_b_t():
    assert b_t(E0) == {E0}
    assert b_t(parse("w*3")) == S("1", "w", "w*2", "w*3")
    assert b_t(parse("w+1")) == S("1", "w", "w+1")
    assert b_t(parse("w*2+1")) == S("1", "w", "w*2", "w*2+1")


def test_f_of():
    assert f_of(eps(1)) == {eps(1)}
    assert f_of(ONE) == {ONE}
    assert f_of(W) == {W}
    assert f_of(parse("w^(w+1)")) == S("w^w", "w^w+1", "w^(w+1)")
    with pytest.raises(OrdinalError):
        f_of(parse("w+1"))


def test_c_cover():
    # C(w): C1 = F(w) = {w}, C2(w) = {w}, Y = {0}; 1 does not enter
    assert c_cover(W) == {W}
    assert c_cover(add(E0, ONE)) == S("1", "e(0)", "e(0)+1")
    assert c_cover(E0) == {E0}
    assert c_cover(ZERO) == set()
    assert c_cover(parse("w^(w+1)")) == S("1", "w^w", "w^w+1", "w^(w+1)")


def test_pieces():
    d = parse("w^(w+1)*2+3")
    assert c1(d) == S("w^w", "w^w+1", "w^(w+1)", "1")
    assert c2(d) == S("w^(w+1)", "w^(w+1)*2", "w^(w+1)*2+3", "1", "2", "3")
    assert y_set(d) == S("1", "0")


def test_d_cover():
    assert d_cover(E0, add(E0, ONE)) == S("1", "e(0)", "e(0)+1", "e(0)*2")
    assert d_cover(E0, nat(5)) == S("1", "2", "3", "4", "5", "e(0)", "e(0)*2")
    assert d_cover(E0, E0) == S("e(0)", "e(0)*2")
    with pytest.raises(OrdinalError):
        d_cover(E0, eps(1))


def test_delta_cover():
    B_small = [nat(3), W]
    assert delta_cover(eps(1), B_small) == set(B_small)
    got = delta_cover(E0, [nat(3), add(E0, ONE)])
    assert got == {nat(3)} | set(d_cover(E0, add(E0, ONE)))
    assert delta_cover(E0, []) == set()
    with pytest.raises(OrdinalError):
        delta_cover(E0, [eps(1)])


@given(small_ords)
@settings(max_examples=200)
def test_cover_properties(delta):
    if not delta:
        return
    C = c_cover(delta)
    assert delta in C
    assert all(monomial(e, c) in C for e, c in cnf(delta))
    assert all(x < succ(eta_of(delta)) for x in C)
    for r in C:
        assert set(c_cover(r)) <= set(C)
