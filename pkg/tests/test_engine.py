import dataclasses
import threading

import pytest

from epswb import ONE, OMEGA, add, eps, mul, nat, omega_pow, parse
from epswb.cert import Truth
from epswb.engine import LIM_E, Engine, default_class2_probes
from epswb.ordinal import OrdinalError, lim_depth_of_index, succ
from epswb.replay import ReplayError, replay, replay_verdict

W = OMEGA
E1, E5, EW = eps(1), eps(5), eps(W)


def two(a):
    return mul(a, nat(2))


@pytest.fixture
def E():
    return Engine()


def certified(v, value):
    return v.certified and v.value is Truth.of(value) and replay_verdict(v)


def test_le1_examples(E):
    assert certified(E.le1_decide(E1, two(E1)), True)
    v = E.le1_decide(E1, succ(two(E1)))
    assert certified(v, False) and "LimE" in v.certificate.rules()
    assert certified(E.le1_decide(EW, succ(two(EW))), True)
    assert certified(E.le1_decide(EW, add(two(EW), nat(2))), False)


def test_le1_ceiling_and_reduction(E):
    a = eps(mul(W, W))
    v = E.le1_decide(a, add(omega_pow(two(a)), nat(7)))
    assert certified(v, False)
    assert {"EtaReduce", "Interval", "Ceiling", "FamilyCeiling"} <= v.certificate.rules()
    assert certified(E.le1_decide(a, mul(a, nat(3))), False)
    assert certified(E.le1_decide(a, eps(succ(mul(W, W)))), False)


def test_le1_range(E):
    with pytest.raises(OrdinalError):
        E.le1_decide(E1, E5)
    with pytest.raises(OrdinalError):
        E.le1_decide(W, W)


def test_le1_any(E):
    assert certified(E.le1_any(parse("w^w"), parse("w^w+1")), True)
    assert certified(E.le1_any(parse("w^w"), parse("w^w+2")), False)
    assert certified(E.le1_any(E1, eps(3)), False)
    assert certified(E.le1_any(E5, E1), False)


def test_lim_membership(E):
    assert certified(E.lim_membership(E1, LIM_E), False)
    assert certified(E.lim_membership(eps(mul(W, W)), LIM_E), True)
    assert certified(E.lim_membership(EW, LIM_E), False)
    # a plain callable only gets an extrapolated verdict
    v = E.lim_membership(eps(mul(W, W)), lambda xi: lim_depth_of_index(xi.index, 1))
    assert v.value is Truth.TRUE and not v.certified
    v = E.lim_membership(eps(mul(W, W)), lambda xi: False)
    assert v.value is Truth.UNKNOWN
    v = E.lim_membership(eps(mul(W, W)), lambda xi: False, monotone=True)
    assert v.value is Truth.FALSE and not v.certified


M_TABLE = {
    "e(1)": "e(1)*2", "e(w)": "e(w)*2+1", "e(w^2)": "e(w^2)*2+2",
    "e(w^3)": "e(w^3)*2+3", "e(w^w)": "e(w^w)*2+w", "e(0)": "e(0)*2",
    "e(e(0))": "e(e(0))*2+e(0)", "e(w*2+1)": "e(w*2+1)*2",
}


@pytest.mark.parametrize("alpha", sorted(M_TABLE))
def test_m_of(E, alpha):
    m, v = E.m_of(parse(alpha))
    assert str(m) == M_TABLE[alpha]
    assert certified(v, True)


def test_m_of_fuel():
    m, v = Engine().m_of(eps(W), fuel=1)
    assert m is None and v.value is Truth.UNKNOWN


def test_g_member(E):
    a = E5
    # beta above alpha is rejected by the guard
    assert certified(E.g_member(EW, two(a), a), False)
    assert certified(E.g_member(eps(0), add(two(a), eps(2)), a), False)
    b = eps(W)
    big = eps(mul(W, W))
    assert certified(E.g_member(b, two(big), big), True)
    assert certified(E.g_member(b, succ(two(big)), big), False)
    with pytest.raises(OrdinalError):
        E.g_member(b, eps(succ(mul(W, W))), big)


def test_a_member(E):
    assert certified(E.a_member(EW, EW, EW), True)
    assert certified(E.a_member(E5, two(E5), E5), False)
    a = eps(mul(W, W))
    for t in (a, succ(a), two(a), succ(two(a)), add(two(a), W), mul(a, nat(3))):
        for b in (EW, eps(add(W, W)), eps(nat(3)), a):
            x, y = E.a_member(b, t, a), E.g_member(b, t, a)
            assert x.value == y.value
            replay_verdict(x)
            replay_verdict(y)


def test_restriction(E):
    beta, alpha = eps(mul(W, nat(2))), EW
    r = E.restriction_check(succ(two(beta)), beta, alpha, [EW])
    assert r["failures"] == 0 and r["rows"][0]["upper"] == r["rows"][0]["lower"] != "Unknown"
    with pytest.raises(OrdinalError):
        E.restriction_check(two(beta), beta, alpha, [beta])
    with pytest.raises(OrdinalError):
        E.restriction_check(add(two(beta), alpha), beta, alpha, [EW])


def test_class2(E):
    for a in (E1, EW):
        v = E.class2_probe(a)
        assert certified(v, False)
    a = eps(parse("w^w"))
    passing = [add(two(a), nat(n)) for n in range(8)]
    v = E.class2_probe(a, passing)
    assert v.value is not Truth.FALSE and not v.certified
    v = E.class2_probe(a, passing + [add(add(two(a), W), ONE)])
    assert certified(v, False)
    v = E.class2_probe(a)
    assert certified(v, False)


def test_unknown_on_low_fuel():
    v = Engine().le1_decide(eps(mul(W, W)), succ(two(eps(mul(W, W)))), fuel=1)
    assert v.value is Truth.UNKNOWN and v.certificate.rule == "OutOfFuel"


def test_memo_is_invisible():
    a = eps(parse("w^w"))
    s = add(add(two(a), W), ONE)
    E = Engine()
    first = E.le1_decide(a, s)
    again = E.le1_decide(a, s)
    assert first.fuel_used == again.fuel_used
    assert first.certificate.shape() == again.certificate.shape()
    assert Engine().le1_decide(a, s, fuel=first.fuel_used - 1).value is Truth.UNKNOWN
    assert E.le1_decide(a, s, fuel=first.fuel_used - 1).value is Truth.UNKNOWN


def test_concurrent_queries():
    E = Engine()
    a = eps(parse("w^w*2"))
    targets = [add(two(a), nat(n)) for n in range(12)]
    results = {}

    def work(s):
        results[s] = E.le1_decide(a, s).value

    threads = [threading.Thread(target=work, args=(s,)) for s in targets]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    solo = Engine()
    assert results == {s: solo.le1_decide(a, s).value for s in targets}


def test_replay_rejects_tampering(E):
    v = E.le1_decide(EW, add(two(EW), nat(2)))
    root = v.certificate
    reach, member = root.children
    bad_root = dataclasses.replace(root, value=True)
    with pytest.raises(ReplayError):
        replay(bad_root)
    bad_reach = dataclasses.replace(reach, depth=nat(3))
    with pytest.raises(ReplayError):
        replay(dataclasses.replace(root, children=(bad_reach, member)))
    a = eps(mul(W, W))
    v = E.le1_decide(a, mul(a, nat(3)))
    fam = v.certificate.children[0]
    samples = list(fam.data["samples"])
    samples[0] = (samples[0][0], add(samples[0][1], ONE))
    bad = dataclasses.replace(fam, data={**fam.data, "samples": samples})
    with pytest.raises(ReplayError):
        replay(dataclasses.replace(v.certificate, children=(bad, v.certificate.children[1])))


def test_verdict_json(E):
    v = E.le1_decide(EW, succ(two(EW)))
    out = v.to_json({"alpha": EW})
    assert out["schema_version"] == 1 and out["value"] == "True"
    assert out["exactness"] == "certified" and out["certificate"]["rule"] == "Le1"


def test_default_probes():
    a = EW
    ps = default_class2_probes(a, 3)
    assert ps[:3] == [two(a), succ(two(a)), add(two(a), nat(2))]
    assert ps[-1] == mul(a, nat(3))
