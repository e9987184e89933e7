"""Certified decision of alpha <=_1 s for epsilon alpha and s in [alpha, alpha^+].

The engine works with index classes.  For an ordinal d let L_d be the class of
indices i with i in Lim^d(OR), i.e. every CNF exponent of i is >= d (L_0 is
everything).  Fix alpha and a template s in [alpha, alpha^+].  The *reach* of
s is the depth d such that, for every epsilon xi <= alpha above the epsilons
of s below alpha,

    xi <=_1 s[alpha := xi]   iff   eps_index(xi) in L_d,

or INF when no xi qualifies.  Reach is computed by reduction rules:

    Alpha2Base    s <= alpha*2                       reach 0
    EtaReduce     s not principal, eta s > s         reach(s) = reach(eta s)
    Interval      pi s < s <= pi s + d pi s          reach(s) = reach(pi s)
    LimSet        s = u + k, u = alpha*2 + lambda    reach(s) = reach(u) + k
    Continuity    s = alpha*2 + zeta, zeta limit     reach(s) = zeta
    FamilyCeiling s = alpha*3                        INF
    Ceiling       s > alpha*3 or s = alpha^+         INF (connectedness from alpha*3)

LimSet uses xi <=_1 eta(u) + 1 iff xi in Lim{...} and Lim L_d = L_{d+1};
Continuity intersects the classes of the canonical fundamental sequence and
uses that a cofinal intersection of L_d is L_sup.  The final answer for alpha
itself is a Lim-membership fact about its index, recorded as LimE,
LimSetCofinal (with a witness schema) or LimSetEmpty (with a bound).
"""

from __future__ import annotations

import threading
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .cert import CERTIFIED, EXTRAPOLATED, INF, Cert, Depth, Truth, Verdict, unknown
from .eta import eta_of, m_non_epsilon, pi_of, pi_plus_d
from .fundseq import _drop_one, index_fs, l_seq
from .ordinal import (
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
    is_natural,
    is_principal,
    last_exponent,
    left_subtract,
    lim_depth_of_index,
    mul,
    nat,
    next_epsilon,
    pred_if_succ,
    succ,
    to_int,
)
from .subst import max_ep_below, subst

DEFAULT_FUEL = 64
DEFAULT_PROBES = 8
EPS_OMEGA = eps(_mk([(ONE, 1)]))


class OutOfFuel(Exception):
    pass


class Budget:
    def __init__(self, fuel: int):
        self.fuel = fuel
        self.used = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.fuel:
            raise OutOfFuel


# index classes


def in_depth(i: Ord, d: Depth) -> bool:
    if d == INF:
        return False
    return lim_depth_of_index(i, d)


def depth_plus(d: Depth, k: int) -> Depth:
    if d == INF:
        return INF
    return add(d, nat(k))


def max_depth(i: Ord) -> Ord:
    """Largest d with i in L_d."""
    if not i or not is_limit(i):
        return ZERO
    return last_exponent(i)


class DepthClass:
    """The epsilons xi > floor whose index lies in L_depth."""

    def __init__(self, depth: Depth, floor: Ord = ZERO):
        self.depth = depth
        self.floor = floor

    def __call__(self, xi: Ord) -> bool:
        return is_epsilon(xi) and xi > self.floor and in_depth(xi.index, self.depth)

    def __repr__(self) -> str:
        return f"DepthClass({self.depth}, floor={self.floor})"


LIM_E = DepthClass(ONE)


def split_finite(s: Ord) -> Tuple[Ord, int]:
    """s = b + k with b zero or a limit and k finite."""
    terms = cnf(s)
    if terms and not terms[-1][0] and not is_epsilon(s):
        return _mk(terms[:-1]), terms[-1][1]
    return s, 0


def _check_alpha(alpha: Ord) -> None:
    if not is_epsilon(alpha):
        raise OrdinalError(f"{alpha} is not an epsilon number")


class Engine:
    def __init__(self, probes: int = DEFAULT_PROBES):
        self.probes = probes
        self._lock = threading.Lock()
        self._reach: Dict[Tuple[Ord, Ord], Tuple[Cert, int]] = {}
        self._adepth: Dict[Tuple[Ord, Ord], Tuple[Cert, int]] = {}
        self.log: List[Tuple[str, tuple, Verdict]] = []

    # memo plumbing

    def _memo(self, table: dict, key: tuple, budget: Budget, compute: Callable[[], Cert]) -> Cert:
        with self._lock:
            hit = table.get(key)
        if hit is not None:
            cert, cost = hit
            budget.spend(cost)
            return cert
        start = budget.used
        cert = compute()
        with self._lock:
            table[key] = (cert, budget.used - start)
        return cert

    def _run(self, name: str, query: tuple, fuel: int, body: Callable[[Budget], Tuple[Truth, Cert]]) -> Verdict:
        budget = Budget(fuel)
        try:
            value, cert = body(budget)
            v = Verdict(value, CERTIFIED, cert, budget.used)
        except OutOfFuel:
            v = unknown(fuel)
        self.log.append((name, query, v))
        return v

    # reach of a template

    def reach(self, alpha: Ord, s: Ord, budget: Budget) -> Cert:
        return self._memo(self._reach, (alpha, s), budget, lambda: self._reach_step(alpha, s, budget))

    def _reach_step(self, alpha: Ord, s: Ord, budget: Budget) -> Cert:
        budget.spend()
        a2, a3 = mul(alpha, nat(2)), mul(alpha, nat(3))
        if s <= a2:
            return Cert("Alpha2Base", alpha, s, ZERO)
        if s == next_epsilon(alpha):
            child = self.reach(alpha, a3, budget)
            return Cert("Ceiling", alpha, s, INF, children=(child,))
        if s > a3:
            if not is_principal(s):
                e = eta_of(s)
                if e > s:
                    child = self.reach(alpha, e, budget)
                    return Cert("EtaReduce", alpha, s, child.depth, children=(child,))
                p = pi_of(s)
                if p < s <= pi_plus_d(s):
                    child = self.reach(alpha, p, budget)
                    return Cert("Interval", alpha, s, child.depth, children=(child,))
            child = self.reach(alpha, a3, budget)
            return Cert("Ceiling", alpha, s, INF, children=(child,))
        if s == a3:
            seq = l_seq(s, alpha)
            samples = self._family_samples(seq, budget)
            return Cert(
                "FamilyCeiling", alpha, s, INF,
                data={"case": seq.case, "index_bound": seq.index_bound, "samples": samples},
            )
        base, k = split_finite(s)
        if k:
            child = self.reach(alpha, base, budget)
            return Cert("LimSet", alpha, s, depth_plus(child.depth, k), data={"k": k}, children=(child,))
        zeta = left_subtract(a2, s)
        seq = l_seq(s, alpha)
        samples = self._family_samples(seq, budget)
        return Cert(
            "Continuity", alpha, s, zeta,
            data={"case": seq.case, "index_bound": seq.index_bound, "zeta": zeta, "samples": samples},
        )

    def _family_samples(self, seq, budget: Budget) -> list:
        out = []
        for n in range(1, self.probes + 1):
            j = nat(n)
            if not j < seq.index_bound:
                break
            budget.spend()
            out.append((j, seq.eval(j)))
        return out

    # Lim membership of alpha in a depth class

    def lim_class(self, alpha: Ord, d: Depth, floor: Ord, budget: Budget) -> Cert:
        """Decide alpha in Lim(DepthClass(d, floor) cap alpha)."""
        budget.spend()
        i = alpha.index
        if d == INF:
            return Cert("LimSetEmpty", alpha, None, d, False, {"reason": "empty class"})
        if not i or not is_limit(i):
            bound = None if not i else eps(pred_if_succ(i))
            return Cert(
                "LimE" if not d else "LimSetEmpty", alpha, None, d, False,
                {"reason": "index not a limit", "bound": bound},
            )
        c = last_exponent(i)
        if c <= d:
            below = _drop_one(cnf(i))
            return Cert(
                "LimSetEmpty", alpha, None, d, False,
                {"reason": "last exponent too small", "last_exponent": c, "bound": eps(below)},
            )
        n0, members = self._schema(i, d, floor, budget)
        return Cert(
            "LimE" if not d else "LimSetCofinal", alpha, None, d, True,
            {"schema": "e(i[n])", "start": n0, "members": members, "floor": floor},
        )

    def _schema(self, i: Ord, d: Depth, floor: Ord, budget: Budget) -> Tuple[int, list]:
        run: list = []
        for n in range(1, 4 * self.probes + 1):
            budget.spend()
            j = index_fs(i, n)
            if in_depth(j, d) and eps(j) > floor:
                run.append((n, j))
                if len(run) == self.probes:
                    return run[0][0], [x for _, x in run]
            else:
                run = []
        raise OutOfFuel

    # alpha <=_1 s

    def le1_decide(self, alpha: Ord, s: Ord, fuel: int = DEFAULT_FUEL) -> Verdict:
        _check_alpha(alpha)
        top = next_epsilon(alpha)
        if not (alpha <= s <= top):
            raise OrdinalError(f"{s} is not in [{alpha}, {top}]")
        return self._run("le1", (alpha, s), fuel, lambda b: self._le1(alpha, s, b))

    def _le1(self, alpha: Ord, s: Ord, budget: Budget) -> Tuple[Truth, Cert]:
        a2, a3 = mul(alpha, nat(2)), mul(alpha, nat(3))
        if a2 < s < a3 and not is_limit(s):
            u = pred_if_succ(s)
            child = self.reach(alpha, u, budget)
            member = self.lim_class(alpha, child.depth, max_ep_below(u, alpha), budget)
            root = Cert("Le1", alpha, s, None, member.value, children=(child, member))
            return Truth.of(member.value), root
        child = self.reach(alpha, s, budget)
        held = in_depth(alpha.index, child.depth)
        member = Cert("DepthMember", alpha, None, child.depth, held)
        return Truth.of(held), Cert("Le1", alpha, s, None, held, children=(child, member))

    def le1_any(self, x: Ord, y: Ord, fuel: int = DEFAULT_FUEL) -> Verdict:
        """x <=_1 y for arbitrary x <= y below the notation ceiling."""
        if y < x:
            return Verdict(Truth.FALSE, CERTIFIED, Cert("Order", None, y, value=False), 0)
        if not is_epsilon(x):
            m = x if not x else m_non_epsilon(x)
            held = y <= m
            return Verdict(Truth.of(held), CERTIFIED, Cert("MNonEpsilon", x, y, value=held, data={"m": m}), 1)
        top = next_epsilon(x)
        if y <= top:
            return self.le1_decide(x, y, fuel)
        v = self.le1_decide(x, top, fuel)
        if v.value is Truth.UNKNOWN:
            return v
        return Verdict(
            v.value, CERTIFIED,
            Cert("Connectedness", x, y, value=bool(v.value), children=(v.certificate,)),
            v.fuel_used,
        )

    # Lim membership for a general predicate

    def lim_membership(
        self,
        alpha: Ord,
        pred: Union[DepthClass, Callable[[Ord], object]],
        fuel: int = DEFAULT_FUEL,
        monotone: bool = False,
    ) -> Verdict:
        _check_alpha(alpha)
        if isinstance(pred, DepthClass):
            def body(b: Budget):
                c = self.lim_class(alpha, pred.depth, pred.floor, b)
                return Truth.of(c.value), c
            return self._run("lim", (alpha, repr(pred)), fuel, body)
        i = alpha.index
        if not i or not is_limit(i):
            bound = None if not i else eps(pred_if_succ(i))
            c = Cert("LimSetEmpty", alpha, value=False, data={"reason": "index not a limit", "bound": bound})
            return Verdict(Truth.FALSE, CERTIFIED, c, 1)
        budget = Budget(fuel)
        results, shapes = [], set()
        try:
            n = 1
            while len(results) < self.probes:
                budget.spend()
                xi = eps(index_fs(i, n))
                r = pred(xi)
                if isinstance(r, Verdict):
                    if r.value is Truth.UNKNOWN:
                        raise OutOfFuel
                    shapes.add(r.certificate.shape())
                    r = bool(r.value)
                results.append((n, xi, bool(r)))
                n += 1
        except OutOfFuel:
            return unknown(fuel)
        values = {r for _, _, r in results}
        probe = Cert("Probe", alpha, data={"probes": [(n, xi, r) for n, xi, r in results]})
        if len(shapes) > 1 or len(values) > 1:
            return Verdict(Truth.UNKNOWN, EXTRAPOLATED, probe, budget.used)
        if values == {True}:
            return Verdict(Truth.TRUE, EXTRAPOLATED, probe, budget.used)
        if monotone:
            return Verdict(Truth.FALSE, EXTRAPOLATED, probe, budget.used)
        return Verdict(Truth.UNKNOWN, EXTRAPOLATED, probe, budget.used)

    # m(alpha)

    def m_of(self, alpha: Ord, fuel: int = DEFAULT_FUEL) -> Tuple[Optional[Ord], Verdict]:
        _check_alpha(alpha)
        a2 = mul(alpha, nat(2))
        candidate = add(a2, max_depth(alpha.index))
        spent = 0
        yes = self.le1_decide(alpha, candidate, fuel)
        spent += yes.fuel_used
        no = self.le1_decide(alpha, succ(candidate), max(fuel - spent, 0))
        spent += no.fuel_used
        if yes.value is Truth.TRUE and no.value is Truth.FALSE:
            cert = Cert("MOf", alpha, candidate, value=True, children=(yes.certificate, no.certificate))
            return candidate, Verdict(Truth.TRUE, CERTIFIED, cert, spent)
        # walk the frontier one successor at a time
        s = a2
        while spent < fuel:
            nxt = self.le1_decide(alpha, succ(s), fuel - spent)
            spent += max(nxt.fuel_used, 1)
            if nxt.value is Truth.UNKNOWN:
                break
            if nxt.value is Truth.FALSE:
                base = self.le1_decide(alpha, s, fuel)
                cert = Cert("MOf", alpha, s, value=True, children=(base.certificate, nxt.certificate))
                return s, Verdict(Truth.TRUE, CERTIFIED, cert, spent)
            s = succ(s)
        return None, unknown(fuel)

    # G(t)

    def g_member(self, beta: Ord, t: Ord, alpha: Ord, fuel: int = DEFAULT_FUEL) -> Verdict:
        _check_alpha(alpha)
        _check_interval(t, alpha)
        guard = _guard(beta, t, alpha)
        if guard:
            c = Cert("GCriterion", alpha, t, value=False, data={"beta": beta, "guard": guard})
            return Verdict(Truth.FALSE, CERTIFIED, c, 1)
        target = succ(subst(eta_of(t), alpha, beta))
        v = self.le1_decide(beta, target, fuel)
        if v.value is Truth.UNKNOWN:
            return v
        c = Cert("GCriterion", alpha, t, value=bool(v.value), data={"beta": beta, "target": target},
                 children=(v.certificate,))
        return Verdict(v.value, CERTIFIED, c, v.fuel_used)

    # A(t)

    def a_depth(self, alpha: Ord, t: Ord, budget: Budget) -> Cert:
        return self._memo(self._adepth, (alpha, t), budget, lambda: self._a_step(alpha, t, budget))

    def _a_step(self, alpha: Ord, t: Ord, budget: Budget) -> Cert:
        budget.spend()
        a2, a3 = mul(alpha, nat(2)), mul(alpha, nat(3))
        if t > a3:
            child = self.a_depth(alpha, a3, budget)
            return Cert("ARecursion", alpha, t, INF, data={"kind": "above-alpha3"}, children=(child,))
        if t == a3:
            seq = l_seq(t, alpha)
            samples = self._family_samples(seq, budget)
            return Cert("ARecursion", alpha, t, INF,
                        data={"kind": "alpha3", "case": seq.case, "index_bound": seq.index_bound,
                              "samples": samples})
        base, k = split_finite(t)
        if k:
            P = pi_plus_d(base)
            gap = left_subtract(base, P)
            if gap is None:
                lims = k
            elif is_natural(gap):
                lims = max(0, k - to_int(gap))
            else:
                lims = 0
            child = self.a_depth(alpha, base, budget)
            return Cert("ARecursion", alpha, t, depth_plus(child.depth, lims),
                        data={"kind": "successor", "k": k, "lim_steps": lims, "pi_plus_d": P},
                        children=(child,))
        if t <= a2:
            return Cert("ARecursion", alpha, t, ONE, data={"kind": "lim-e"})
        seq = l_seq(t, alpha)
        zeta = left_subtract(a2, t)
        samples = self._family_samples(seq, budget)
        return Cert("ARecursion", alpha, t, succ(zeta),
                    data={"kind": "family", "case": seq.case, "index_bound": seq.index_bound,
                          "zeta": zeta, "pi_plus_d": pi_plus_d(t), "samples": samples})

    def a_member(self, beta: Ord, t: Ord, alpha: Ord, fuel: int = DEFAULT_FUEL) -> Verdict:
        _check_alpha(alpha)
        _check_interval(t, alpha)
        if alpha < EPS_OMEGA:
            v = self.g_member(beta, t, alpha, fuel)
            if v.value is Truth.UNKNOWN:
                return v
            c = Cert("ARecursion", alpha, t, value=bool(v.value), data={"kind": "g-form"},
                     children=(v.certificate,))
            return Verdict(v.value, CERTIFIED, c, v.fuel_used)
        guard = _guard(beta, t, alpha)
        if guard:
            c = Cert("AMember", alpha, t, value=False, data={"beta": beta, "guard": guard})
            return Verdict(Truth.FALSE, CERTIFIED, c, 1)

        def body(b: Budget):
            child = self.a_depth(alpha, t, b)
            held = in_depth(beta.index, child.depth)
            return Truth.of(held), Cert("AMember", alpha, t, child.depth, held,
                                         {"beta": beta}, (child,))
        return self._run("a", (beta, t, alpha), fuel, body)

    # probes of the intersection and restriction

    def class2_probe(self, alpha: Ord, probe_ts: Optional[Sequence[Ord]] = None,
                     fuel: int = DEFAULT_FUEL) -> Verdict:
        _check_alpha(alpha)
        if probe_ts is None:
            probe_ts = default_class2_probes(alpha, self.probes)
        used, shapes, passes = 0, set(), []
        for t in probe_ts:
            v = self.g_member(alpha, t, alpha, fuel)
            used += v.fuel_used
            if v.value is Truth.FALSE and v.certified:
                c = Cert("Class2Refuted", alpha, t, value=False, children=(v.certificate,))
                return Verdict(Truth.FALSE, CERTIFIED, c, used)
            if v.value is Truth.UNKNOWN:
                return unknown(used)
            shapes.add(v.certificate.shape())
            passes.append(t)
        c = Cert("Probe", alpha, data={"passed": passes})
        if len(shapes) == 1:
            return Verdict(Truth.TRUE, EXTRAPOLATED, c, used)
        return Verdict(Truth.UNKNOWN, EXTRAPOLATED, c, used)

    def restriction_check(self, t: Ord, beta: Ord, alpha: Ord, probes: Iterable[Ord],
                          fuel: int = DEFAULT_FUEL) -> dict:
        _check_alpha(alpha)
        _check_alpha(beta)
        if not alpha < beta:
            raise OrdinalError("restriction needs alpha < beta")
        if max_ep_below(t, beta) >= alpha:
            raise OrdinalError(f"Ep({t}) below {beta} is not contained in {alpha}")
        low = subst(t, beta, alpha)
        rows, failures = [], 0
        for gamma in probes:
            if gamma > alpha:
                raise OrdinalError(f"probe {gamma} exceeds {alpha}")
            up = self.a_member(gamma, t, beta, fuel)
            down = self.a_member(gamma, low, alpha, fuel)
            agree = up.value == down.value or Truth.UNKNOWN in (up.value, down.value)
            if not agree and up.certified and down.certified:
                failures += 1
            rows.append({"gamma": str(gamma), "upper": up.value.value, "lower": down.value.value,
                         "agree": agree})
        return {"t": str(t), "beta": str(beta), "alpha": str(alpha), "restricted": str(low),
                "rows": rows, "failures": failures}


def _check_interval(t: Ord, alpha: Ord) -> None:
    if not (alpha <= t < next_epsilon(alpha)):
        raise OrdinalError(f"{t} is not in [{alpha}, {next_epsilon(alpha)})")


def _guard(beta: Ord, t: Ord, alpha: Ord) -> Optional[str]:
    if not is_epsilon(beta):
        return "beta is not an epsilon number"
    if beta > alpha:
        return "beta exceeds alpha"
    if max_ep_below(t, alpha) >= beta:
        return "Ep(t) below alpha is not contained in beta"
    return None


def default_class2_probes(alpha: Ord, k: int = DEFAULT_PROBES) -> List[Ord]:
    a2 = mul(alpha, nat(2))
    w = _mk([(ONE, 1)])
    ladder = [nat(n) for n in range(k)] + [w, mul(w, nat(2)), mul(w, w), _mk([(w, 1)]), alpha]
    return [add(a2, z) for z in ladder]


default_engine = Engine()


def le1_decide(alpha: Ord, s: Ord, fuel: int = DEFAULT_FUEL) -> Verdict:
    return default_engine.le1_decide(alpha, s, fuel)


def lim_membership(alpha: Ord, pred, fuel: int = DEFAULT_FUEL, monotone: bool = False) -> Verdict:
    return default_engine.lim_membership(alpha, pred, fuel, monotone)


def m_of(alpha: Ord, fuel: int = DEFAULT_FUEL) -> Tuple[Optional[Ord], Verdict]:
    return default_engine.m_of(alpha, fuel)


def g_member(beta: Ord, t: Ord, alpha: Ord, fuel: int = DEFAULT_FUEL) -> Verdict:
    return default_engine.g_member(beta, t, alpha, fuel)


def a_member(beta: Ord, t: Ord, alpha: Ord, fuel: int = DEFAULT_FUEL) -> Verdict:
    return default_engine.a_member(beta, t, alpha, fuel)


def class2_probe(alpha: Ord, probe_ts=None, fuel: int = DEFAULT_FUEL) -> Verdict:
    return default_engine.class2_probe(alpha, probe_ts, fuel)


def restriction_check(t: Ord, beta: Ord, alpha: Ord, probes, fuel: int = DEFAULT_FUEL) -> dict:
    return default_engine.restriction_check(t, beta, alpha, probes, fuel)
