"""Independent replay of engine certificates.

Every node is checked against the premises of its rule using only ordinal
arithmetic; the depth or truth value it claims is recomputed from its
children.  Replay never calls back into the engine.
"""

from __future__ import annotations

from typing import Optional

from .cert import INF, Cert, Depth, Verdict
from .eta import eta_of, m_non_epsilon, pi_of, pi_plus_d
from .fundseq import index_fs, l_seq
from .ordinal import (
    ONE,
    ZERO,
    Ord,
    add,
    eps,
    is_epsilon,
    is_limit,
    is_principal,
    last_exponent,
    left_subtract,
    lim_depth_of_index,
    mul,
    nat,
    next_epsilon,
    omega_pow,
    pred_if_succ,
    succ,
)
from .subst import max_ep_below, subst


class ReplayError(AssertionError):
    pass


def _need(cond: bool, node: Cert, why: str) -> None:
    if not cond:
        raise ReplayError(f"{node.rule} at alpha={node.alpha} s={node.s}: {why}")


def _member(i: Ord, d: Depth) -> bool:
    return d != INF and lim_depth_of_index(i, d)


def _plus(d: Depth, k: int) -> Depth:
    return INF if d == INF else add(d, nat(k))


def _same(a: Depth, b: Depth) -> bool:
    if a == INF or b == INF:
        return a == INF and b == INF
    return a == b


def _check_samples(node: Cert, expect) -> None:
    seq = l_seq(node.s, node.alpha)
    _need(seq.case == node.data["case"], node, "sequence case differs")
    _need(seq.index_bound == node.data["index_bound"], node, "index bound differs")
    _need(len(node.data["samples"]) > 0, node, "no samples")
    prev = node.alpha
    for j, lj in node.data["samples"]:
        _need(seq.eval(j) == lj, node, f"member {j} differs")
        _need(prev < lj < node.s, node, f"member {j} out of order")
        expect(j, lj)
        prev = lj


def replay_reach(node: Cert) -> Depth:
    a = node.alpha
    s = node.s
    _need(is_epsilon(a), node, "alpha is not an epsilon")
    _need(a <= s <= next_epsilon(a), node, "s outside [alpha, alpha^+]")
    a2, a3 = mul(a, nat(2)), mul(a, nat(3))
    r = node.rule
    kids = node.children
    if r == "Alpha2Base":
        _need(s <= a2, node, "s exceeds alpha*2")
        d: Depth = ZERO
    elif r == "Ceiling":
        _need(s == next_epsilon(a) or s > a3, node, "ceiling needs s > alpha*3")
        _need(len(kids) == 1 and kids[0].s == a3, node, "ceiling must rest on alpha*3")
        _need(replay_reach(kids[0]) == INF, node, "alpha*3 not refuted")
        d = INF
    elif r == "FamilyCeiling":
        _need(s == a3, node, "family ceiling is for alpha*3 only")
        _need(node.data["index_bound"] == a, node, "family must be indexed by alpha")

        def expect(j, lj):
            _need(lj == add(a2, j), node, "member is not alpha*2 + j")

        _check_samples(node, expect)
        d = INF
    elif r == "EtaReduce":
        _need(not is_principal(s) and eta_of(s) > s, node, "eta does not move s")
        _need(len(kids) == 1 and kids[0].s == eta_of(s), node, "child is not eta s")
        d = replay_reach(kids[0])
    elif r == "Interval":
        _need(not is_principal(s), node, "s is principal")
        _need(pi_of(s) < s <= pi_plus_d(s), node, "s outside (pi s, pi s + d pi s]")
        _need(len(kids) == 1 and kids[0].s == pi_of(s), node, "child is not pi s")
        d = replay_reach(kids[0])
    elif r == "LimSet":
        k = node.data["k"]
        _need(len(kids) == 1, node, "one premise expected")
        u = kids[0].s
        _need(k >= 1 and add(u, nat(k)) == s, node, "s is not u + k")
        _need(a2 <= u < a3 and (u == a2 or is_limit(u)), node, "u is not alpha*2 + limit")
        _need(eta_of(u) == u, node, "u is not eta-fixed")
        d = _plus(replay_reach(kids[0]), k)
    elif r == "Continuity":
        _need(a2 < s < a3 and is_limit(s), node, "s is not a limit in (alpha*2, alpha*3)")
        zeta = left_subtract(a2, s)
        _need(zeta == node.data["zeta"], node, "zeta differs")

        def expect(j, lj):
            zj = left_subtract(a2, lj)
            _need(zj is not None and zj < zeta, node, "member is not alpha*2 + smaller tail")

        _check_samples(node, expect)
        d = zeta
    else:
        raise ReplayError(f"unknown reach rule {r}")
    _need(_same(d, node.depth), node, f"claimed depth {node.depth}, replayed {d}")
    return d


def replay_lim_class(node: Cert, d: Depth) -> bool:
    a = node.alpha
    i = a.index
    _need(_same(node.depth, d), node, "class depth differs from premise")
    if node.value:
        _need(d != INF and is_limit(i), node, "cofinal set needs a limit index")
        _need(last_exponent(i) > d, node, "index not in the next Lim class")
        start = node.data["start"]
        for n, j in enumerate(node.data["members"], start):
            _need(index_fs(i, n) == j, node, "schema member differs")
            _need(_member(j, d), node, f"schema member {j} outside class")
            _need(eps(j) > node.data["floor"], node, "schema member below floor")
        return True
    if d == INF:
        return False
    if not i or not is_limit(i):
        bound = node.data.get("bound")
        _need(bound is None if not i else bound == eps(pred_if_succ(i)), node, "bad bound")
        return False
    c = node.data["last_exponent"]
    _need(c == last_exponent(i) and c <= d, node, "last exponent not small enough")
    below = node.data["bound"]
    _need(add(below.index, omega_pow(c)) == i, node, "bound is not i minus its last term")
    return False


def replay_le1(node: Cert) -> bool:
    _need(node.rule == "Le1", node, "not an Le1 root")
    a, s = node.alpha, node.s
    reach, member = node.children
    a2, a3 = mul(a, nat(2)), mul(a, nat(3))
    if member.rule == "DepthMember":
        _need(reach.s == s, node, "reach is about another ordinal")
        d = replay_reach(reach)
        held = _member(a.index, d)
        _need(member.value == held, member, "membership value differs")
    else:
        _need(a2 < s < a3 and not is_limit(s), node, "Lim form needs a successor in (alpha*2, alpha*3)")
        _need(reach.s == pred_if_succ(s), node, "reach is not about s - 1")
        d = replay_reach(reach)
        if member.value:
            _need(member.data["floor"] == max_ep_below(reach.s, a), member, "floor differs")
        held = replay_lim_class(member, d)
    _need(node.value == held, node, "root value differs")
    return held


def replay_a(node: Cert) -> Depth:
    _need(node.rule == "ARecursion", node, "not an A node")
    a, t = node.alpha, node.s
    a2, a3 = mul(a, nat(2)), mul(a, nat(3))
    kind = node.data["kind"]
    if kind == "above-alpha3":
        _need(t > a3 and node.children[0].s == a3, node, "needs t > alpha*3 resting on alpha*3")
        _need(replay_a(node.children[0]) == INF, node, "A(alpha*3) not empty")
        d: Depth = INF
    elif kind == "alpha3":
        _need(t == a3, node, "alpha3 kind for alpha*3 only")
        _need(node.data["index_bound"] == a, node, "family must be indexed by alpha")

        def expect(j, lj):
            _need(lj == add(a2, j), node, "member is not alpha*2 + j")

        _check_samples(node, expect)
        d = INF
    elif kind == "successor":
        k = node.data["k"]
        base = node.children[0].s
        _need(add(base, nat(k)) == t and (is_limit(base)), node, "t is not base + k")
        P = pi_plus_d(base)
        lims = sum(1 for q in range(k) if add(base, nat(q)) >= P) if k <= 64 else node.data["lim_steps"]
        if k <= 64:
            _need(lims == node.data["lim_steps"], node, "Lim step count differs")
        d = _plus(replay_a(node.children[0]), lims)
    elif kind == "lim-e":
        _need(a <= t <= a2 and is_limit(t), node, "not a limit in [alpha, alpha*2]")
        d = ONE
    elif kind == "family":
        _need(a2 < t < a3 and is_limit(t), node, "not a limit in (alpha*2, alpha*3)")
        _need(t > pi_plus_d(t), node, "family branch needs t > pi t + d pi t")
        zeta = left_subtract(a2, t)

        def expect(j, lj):
            zj = left_subtract(a2, lj)
            _need(zj is not None and zj < zeta, node, "member is not alpha*2 + smaller tail")

        _check_samples(node, expect)
        d = succ(zeta)
    else:
        raise ReplayError(f"unknown A kind {kind}")
    _need(_same(d, node.depth), node, f"claimed depth {node.depth}, replayed {d}")
    return d


def replay(node: Cert) -> Optional[bool]:
    """Replay a root certificate; returns the replayed truth value."""
    r = node.rule
    if r == "Le1":
        return replay_le1(node)
    if r == "GCriterion":
        beta = node.data["beta"]
        if "guard" in node.data:
            _need(_guard_fails(beta, node.s, node.alpha), node, "guard does not fail")
            return False
        _need(not _guard_fails(beta, node.s, node.alpha), node, "guard fails")
        target = succ(subst(eta_of(node.s), node.alpha, beta))
        child = node.children[0]
        _need(child.alpha == beta and child.s == target, node, "child is not the G target")
        held = replay_le1(child)
        _need(held == node.value, node, "value differs")
        return held
    if r == "AMember":
        beta = node.data["beta"]
        if "guard" in node.data:
            _need(_guard_fails(beta, node.s, node.alpha), node, "guard does not fail")
            return False
        _need(not _guard_fails(beta, node.s, node.alpha), node, "guard fails")
        d = replay_a(node.children[0])
        held = _member(beta.index, d)
        _need(held == node.value, node, "value differs")
        return held
    if r == "ARecursion" and node.data.get("kind") == "g-form":
        held = replay(node.children[0])
        _need(held == node.value, node, "value differs")
        return held
    if r == "MOf":
        yes, no = node.children
        _need(yes.s == node.s and no.s == succ(node.s), node, "frontier pair mismatch")
        _need(replay_le1(yes) is True and replay_le1(no) is False, node, "frontier not certified")
        return True
    if r == "Class2Refuted":
        _need(replay(node.children[0]) is False, node, "probe not refuted")
        return False
    if r == "Connectedness":
        child = node.children[0]
        _need(child.alpha == node.alpha and child.s == next_epsilon(node.alpha), node, "bad bound")
        held = replay_le1(child)
        _need(not held and node.value is False, node, "connectedness refutes only")
        return False
    if r == "MNonEpsilon":
        x = node.alpha
        m = x if not x else m_non_epsilon(x)
        _need(m == node.data["m"], node, "m differs")
        held = node.s <= m
        _need(held == node.value, node, "value differs")
        return held
    if r == "Order":
        return False
    if r == "Probe":
        return None
    if r in ("LimE", "LimSetEmpty", "LimSetCofinal"):
        return replay_lim_class(node, node.depth)
    raise ReplayError(f"cannot replay root rule {r}")


def replay_verdict(v: Verdict) -> bool:
    if not v.certified:
        return True
    held = replay(v.certificate)
    if held is not None and held != bool(v.value):
        raise ReplayError("verdict value differs from replayed certificate")
    return True


def _guard_fails(beta: Ord, t: Ord, alpha: Ord) -> bool:
    return not is_epsilon(beta) or beta > alpha or max_ep_below(t, alpha) >= beta
