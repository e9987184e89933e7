import pytest

from epswb import ONE, OMEGA, ZERO, add, eps, mul, nat, omega_pow, parse
from epswb.fundseq import e_seq, find_dominating, index_fs, l_seq, sample
from epswb.ordinal import OrdinalError
from epswb.subst import subst

E0, E1 = eps(0), eps(1)
W = OMEGA


def test_alpha_times_two():
    seq = l_seq(mul(E0, nat(2)), E0)
    assert seq.index_bound == E0
    assert sample(seq, [ONE, nat(5), W]) == [add(E0, ONE), add(E0, nat(5)), add(E0, W)]


def test_qm_zero():
    seq = l_seq(omega_pow(add(E0, ONE)), E0)
    assert seq.index_bound == W
    assert sample(seq, [ONE, nat(2), nat(3)]) == [E0, mul(E0, nat(2)), mul(E0, nat(3))]


def test_qm_limit():
    # the last exponent of e(0)+w is 1, so this is the successor case
    seq = l_seq(omega_pow(add(E0, W)), E0)
    assert seq.case == "Qm=succ" and seq.index_bound == W
    assert seq(nat(3)) == parse("w^(e(0)+3)")
    seq = l_seq(parse("w^(e(0)+w^w)"), E0)
    assert seq.case == "Qm=limit" and seq.index_bound == W
    assert seq(nat(3)) == parse("w^(e(0)+w^3)")


def test_qm_successor():
    t = parse("w^(e(0)+w^2)")
    seq = l_seq(t, E0)
    assert seq.index_bound == W
    assert seq(nat(2)) == parse("w^(e(0)+w*2)")


def test_qm_alpha():
    seq = e_seq(omega_pow(mul(E0, nat(2))), E0)
    assert seq.index_bound == E0
    assert seq(nat(2)) == parse("w^(e(0)+w^2)")
    assert seq(W) == parse("w^(e(0)+w^w)")


def test_e_seq_uses_principal_part():
    t = add(omega_pow(add(E0, ONE)), nat(3))
    seq = e_seq(t, E0)
    assert seq(nat(2)) == mul(E0, nat(2))


def test_recursion_tail_above_alpha():
    p = omega_pow(add(E0, ONE))
    seq = l_seq(mul(p, nat(2)), E0)
    assert seq.case == "tail>alpha/Qm=0"
    assert seq(nat(3)) == add(p, mul(E0, nat(3)))


def test_errors():
    with pytest.raises(OrdinalError):
        l_seq(add(E0, ONE), E0)
    with pytest.raises(OrdinalError):
        l_seq(E1, E0)
    with pytest.raises(OrdinalError):
        e_seq(add(E0, W), E0)
    seq = l_seq(mul(E0, nat(2)), E0)
    with pytest.raises(OrdinalError):
        seq(E0)
    with pytest.raises(OrdinalError):
        seq(ZERO)


def test_dominating():
    seq = l_seq(parse("w^(e(0)+w^w)"), E0)
    s = parse("w^(e(0)+w^5+3)*7")
    j = find_dominating(seq, s)
    assert j is not None and seq(j) > s


def test_restriction_commutes():
    a, b = eps(W), E1
    t = add(mul(a, nat(2)), omega_pow(add(a, W)))
    up, low = l_seq(t, a), l_seq(subst(t, a, b), b)
    for j in (ONE, nat(4)):
        assert low(j) == subst(up(j), a, b)


def test_index_fs():
    assert index_fs(W, 3) == nat(3)
    assert index_fs(parse("w^2"), 3) == parse("w*3")
    assert index_fs(parse("w^w"), 3) == parse("w^3")
    assert index_fs(E0, 2) == parse("w^w")
    assert index_fs(eps(W), 2) == eps(2)
    assert index_fs(mul(E0, nat(2)), 1) == add(E0, W)
