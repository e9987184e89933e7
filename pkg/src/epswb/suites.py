"""Registered property suites; each returns a machine-readable report."""

from __future__ import annotations

import random
from typing import Callable, Dict, List, Optional, Tuple

from .cert import Truth
from .covering import b_t, c_cover, d_cover, delta_cover
from .engine import Engine
from .eta import d_of, eta_of, m_interval, m_non_epsilon, pi_of, pi_plus_d, wilken_le1_plus
from .fundseq import _drop_one, dominating_candidates, find_dominating, l_seq
from .oracle import (
    dominance,
    m_closed,
    m_iterated,
    min_iso,
    random_below_eps,
    random_ord,
    subst_witness_search,
)
from .ordinal import (
    OMEGA,
    ONE,
    ZERO,
    CoefficientOverflow,
    Ord,
    _mk,
    add,
    cmp,
    cnf,
    eps,
    is_epsilon,
    is_limit,
    is_principal,
    leading_exponent,
    left_subtract,
    monomial,
    mul,
    nat,
    next_epsilon,
    omega_pow,
    parse,
    pred_if_succ,
    succ,
    to_str,
)
from .replay import ReplayError, replay_verdict
from .subst import ep_set, in_M, max_ep_below, subst

W = OMEGA
W2 = mul(W, W)


def w_pow(x) -> Ord:
    return omega_pow(nat(x) if isinstance(x, int) else x)


class Report:
    def __init__(self, name: str, seed: int, budget: int):
        self.name, self.seed, self.budget = name, seed, budget
        self.checks: Dict[str, List[int]] = {}
        self.failures: List[dict] = []
        self.skipped = 0
        self.extra: dict = {}

    def check(self, label: str, ok: bool, case: object = None) -> bool:
        row = self.checks.setdefault(label, [0, 0])
        row[0 if ok else 1] += 1
        if not ok and len(self.failures) < 25:
            self.failures.append({"check": label, "case": _show(case)})
        return ok

    def skip(self) -> None:
        self.skipped += 1

    @property
    def failed(self) -> int:
        return sum(f for _, f in self.checks.values())

    @property
    def passed(self) -> int:
        return sum(p for p, _ in self.checks.values())

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "suite": self.name,
            "seed": self.seed,
            "budget": self.budget,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "checks": {k: {"passed": p, "failed": f} for k, (p, f) in sorted(self.checks.items())},
            "failures": self.failures,
            **self.extra,
        }


def _show(case: object) -> object:
    if isinstance(case, Ord):
        return str(case)
    if isinstance(case, (list, tuple)):
        return [_show(c) for c in case]
    if isinstance(case, dict):
        return {str(k): _show(v) for k, v in case.items()}
    return case


# samplers

INDEX_POOL = [ZERO, ONE, nat(2), nat(5), W, succ(W), mul(W, nat(2)), W2, add(W2, W),
              w_pow(3), w_pow(W), add(w_pow(W), ONE), eps(0), succ(eps(0))]


def random_eps(rng: random.Random, pool=INDEX_POOL) -> Ord:
    return eps(rng.choice(pool))


def eps_below(x: Ord) -> List[Ord]:
    return [eps(i) for i in INDEX_POOL if eps(i) < x]


def random_in_interval(rng: random.Random, alpha: Ord, atoms: List[Ord], depth: int = 3) -> Ord:
    """A random ordinal in [alpha, alpha^+) whose small epsilons come from atoms."""
    x = random_below_eps(rng, alpha, atoms, depth)
    if x >= alpha:
        return x
    return add(alpha, x) if rng.random() < 0.5 else add(mul(alpha, nat(rng.randint(1, 3))), x)


# cnf-laws


def suite_cnf_laws(rep: Report, rng: random.Random) -> None:
    pool: List[Ord] = []
    for _ in range(rep.budget):
        x = random_ord(rng)
        rep.check("roundtrip", parse(to_str(x)) == x, x)
        if pool:
            y, z = rng.choice(pool), rng.choice(pool)
            try:
                rep.check("add-assoc", add(add(x, y), z) == add(x, add(y, z)), (x, y, z))
                rep.check("mul-assoc", mul(mul(x, y), z) == mul(x, mul(y, z)), (x, y, z))
                rep.check("left-distrib", mul(x, add(y, z)) == add(mul(x, y), mul(x, z)), (x, y, z))
            except CoefficientOverflow:
                rep.skip()
            rep.check("add-increasing", x <= add(x, y), (x, y))
            lo, hi = sorted((y, z))
            if lo < hi:
                rep.check("add-right-strict", add(x, lo) < add(x, hi), (x, lo, hi))
                if x:
                    rep.check("mul-right-strict", mul(x, lo) < mul(x, hi), (x, lo, hi))
                rep.check("omega-pow-strict", omega_pow(lo) < omega_pow(hi), (lo, hi))
            rep.check("cmp-antisym", int(cmp(x, y)) == -int(cmp(y, x)), (x, y))
        rep.check("eps-fixed-point", is_epsilon(x) == (omega_pow(x) == x), x)
        rep.check("omega-pow-principal", is_principal(omega_pow(x)), x)
        if is_epsilon(x):
            rep.check("eps-above-index", x.index < x, x)
        pool.append(x)
        if len(pool) > 64:
            pool.pop(0)


# subst-props


def _subst_sample(rng: random.Random) -> Tuple[Ord, Ord, List[Ord]]:
    while True:
        alpha, e = random_eps(rng), random_eps(rng)
        if alpha != e:
            return alpha, e, eps_below(min(alpha, e))


def suite_subst_props(rep: Report, rng: random.Random) -> None:
    for _ in range(rep.budget):
        alpha, e, atoms = _subst_sample(rng)
        q = random_below_eps(rng, alpha, atoms)
        s = random_below_eps(rng, alpha, atoms)
        if not (in_M(q, alpha, e) and in_M(s, alpha, e)):
            rep.skip()
            continue
        h = lambda x: subst(x, alpha, e)
        case = (q, s, alpha, e)
        small = random_below_eps(rng, eps(0), [], 2)
        rep.check("identity-below", h(small) == small if small < alpha else True, (small, alpha, e))
        rep.check("order", cmp(q, s) == cmp(h(q), h(s)), case)
        hs = h(s)
        rep.check("range", hs < next_epsilon(e), case)
        rep.check("ep-normal", {x for x in ep_set(hs) if x < e} == {x for x in ep_set(s) if x < alpha}, case)
        try:
            rep.check("hom-add", h(add(q, s)) == add(h(q), hs), case)
            rep.check("hom-mul", h(mul(q, s)) == mul(h(q), hs), case)
        except CoefficientOverflow:
            rep.skip()
        rep.check("hom-omega-pow", h(omega_pow(s)) == omega_pow(hs), case)
        rep.check("involution", subst(hs, e, alpha) == s, case)
        terms = cnf(s)
        for k in range(1, len(terms)):
            rep.check("tail-closure", in_M(_mk(terms[k:]), alpha, e), case)
        rep.check("closure-add", in_M(add(q, s), alpha, e), case)
        rep.check("closure-mul", in_M(mul(q, s), alpha, e), case)
        rep.check("closure-omega-pow", in_M(omega_pow(s), alpha, e), case)


# eta-props


def suite_eta_props(rep: Report, rng: random.Random) -> None:
    for _ in range(rep.budget):
        alpha = random_eps(rng)
        atoms = eps_below(alpha)
        t = random_in_interval(rng, alpha, atoms)
        s = random_in_interval(rng, alpha, atoms)
        t, s = sorted((t, s))
        gen = random_ord(rng, 4, 2)
        for x in (t, gen):
            if x:
                rep.check("pi-succ", pi_of(succ(x)) == pi_of(x), x)
                T1 = leading_exponent(x)
                rep.check("d-bound", d_of(pi_of(x)) <= T1 <= pi_of(x), x)
                rep.check("pi-idem", pi_of(pi_of(x)) == pi_of(x) and pi_of(pi_plus_d(x)) == pi_of(x), x)
                rep.check("eta-idem", eta_of(eta_of(x)) == eta_of(x), x)
        case = (t, s, alpha)
        rep.check("pi-mono", pi_of(t) <= pi_of(s), case)
        rep.check("pid-mono", pi_plus_d(t) <= pi_plus_d(s), case)
        rep.check("eta-mono", eta_of(t) <= eta_of(s), case)
        rep.check("alpha2-below-eta", mul(alpha, nat(2)) <= eta_of(t), case)
        # eta s is the largest m(u) for u in (alpha, s]
        a2 = mul(alpha, nat(2))
        if s <= a2:
            rep.check("eta-max-m", eta_of(s) == a2, case)
        else:
            probes = [s, pi_of(s)] + [u for u in (t, succ(alpha), a2) if alpha < u <= s]
            probes = [u for u in probes if alpha < u]
            best = max(m_interval(u, alpha) for u in probes)
            rep.check("eta-max-m", best == eta_of(s), case)
        # commuting with substitution
        beta = rng.choice([b for b in eps_below(succ(alpha)) if b > max_ep_below(t, alpha)] or [alpha])
        if max_ep_below(t, alpha) < beta:
            hcase = (t, alpha, beta)
            h = lambda x: subst(x, alpha, beta)
            ok_a = all(max_ep_below(y, alpha) < beta or not max_ep_below(y, alpha)
                       for y in (pi_of(t), d_of(pi_of(t)), eta_of(t)))
            rep.check("subst-a", ok_a, hcase)
            rep.check("subst-b", pi_of(h(t)) == h(pi_of(t)), hcase)
            rep.check("subst-c", d_of(pi_of(h(t))) == h(d_of(pi_of(t))), hcase)
            rep.check("subst-d", pi_plus_d(h(t)) == h(pi_plus_d(t)), hcase)
            rep.check("subst-e", eta_of(h(t)) == h(eta_of(t)), hcase)
    e0 = eps(0)
    rep.check("m-below-eta-occurs", m_interval(succ(e0), e0) < eta_of(succ(e0)), succ(e0))


# wilken cross-check


def principal_table(max_coeff: int = 4) -> List[Ord]:
    out = []
    for a3 in range(max_coeff + 1):
        for a2 in range(max_coeff + 1):
            for a1 in range(max_coeff + 1):
                for a0 in range(max_coeff + 1):
                    A = ZERO
                    for k, c in ((3, a3), (2, a2), (1, a1), (0, a0)):
                        if c:
                            A = add(A, monomial(nat(k), c))
                    out.append(omega_pow(A))
    return out


def suite_wilken(rep: Report, rng: random.Random) -> None:
    cands = [nat(n) for n in range(1, 7)] + [W, succ(W), W2, w_pow(3), w_pow(4)]
    for alpha in principal_table():
        m = m_non_epsilon(alpha)
        gap = left_subtract(alpha, m)
        true_xi = [x for x in cands if x < alpha and wilken_le1_plus(alpha, x)]
        best = max(true_xi) if true_xi else ZERO
        rep.check("m-equals-max-xi", gap == best, alpha)
    rep.extra["cases"] = len(principal_table())


# cover-props


def suite_cover_props(rep: Report, rng: random.Random) -> None:
    levels = [eps(0), eps(1), eps(2)]
    for _ in range(rep.budget):
        if rng.random() < 0.2:
            delta = random_below_eps(rng, W, [], 3)
            alpha = None
        else:
            alpha = rng.choice(levels)
            delta = random_in_interval(rng, alpha, eps_below(alpha))
        if not delta:
            rep.skip()
            continue
        C = c_cover(delta)
        top = succ(eta_of(delta))
        rep.check("finite-bounded", all(x < top for x in C), delta)
        mons = [monomial(e, c) for e, c in cnf(delta)]
        rep.check("contains", delta in C and all(m in C for m in mons), delta)
        rep.check("size", len(C) >= len(cnf(delta)), delta)
        rep.check("transitive", all(set(c_cover(r)) <= set(C) for r in C), delta)
        if alpha is not None:
            rep.check("eta-in-D", eta_of(delta) in d_cover(alpha, delta), (alpha, delta))
            B = [delta, random_in_interval(rng, alpha, eps_below(alpha)), nat(3)]
            t = max(B)
            rep.check("Delta-bound", all(x < succ(eta_of(t)) for x in delta_cover(alpha, B)), (alpha, B))
            es = [e for e in levels + [eps(3)] if e != alpha and e > max_ep_below(delta, alpha)]
            if es:
                e = rng.choice(es)
                if in_M(delta, alpha, e):
                    img = set(c_cover(subst(delta, alpha, e)))
                    rep.check("subst-compatible", all(subst(x, alpha, e) in img for x in C), (delta, alpha, e))


# fundseq-props


def suite_fundseq_props(rep: Report, rng: random.Random) -> None:
    done = 0
    tries = 0
    while done < rep.budget and tries < 50 * rep.budget:
        tries += 1
        alpha = random_eps(rng, INDEX_POOL[3:])
        atoms = eps_below(alpha)
        t = random_in_interval(rng, alpha, atoms)
        if not (t > alpha and is_limit(t)):
            continue
        done += 1
        seq = l_seq(t, alpha)
        bound = seq.index_bound
        js = sorted({j for j in (nat(1), nat(2), nat(3), nat(7), W, add(W, ONE), W2, eps(0)) if ZERO < j < bound})
        vals = [seq.eval(j) for j in js]
        rep.check("bound-le-alpha", bound <= alpha, (t, alpha))
        rep.check("increasing", all(a < b for a, b in zip(vals, vals[1:])), (t, alpha))
        rep.check("inside", all(alpha < v < t for v in vals), (t, alpha))
        for _ in range(3):
            s = random_in_interval(rng, alpha, atoms)
            if s < t:
                found = find_dominating(seq, s, 64)
                rep.check("cofinal-probe", found is not None, (t, alpha, s))
        m = max_ep_below(t, alpha)
        betas = [b for b in atoms if b > m] + [alpha]
        beta = rng.choice(betas)
        h = lambda x: subst(x, alpha, beta)
        for j in js:
            if not j < beta:
                continue
            lj = seq.eval(j)
            case = (t, alpha, beta, j)
            rep.check("ep-below-beta", max_ep_below(lj, alpha) < beta or not max_ep_below(lj, alpha), case)
            if beta != alpha:
                low = l_seq(h(t), beta)
                rep.check("restriction", j < low.index_bound and low.eval(j) == h(lj), case)
            rep.check("eta-le", eta_of(h(lj)) <= eta_of(h(t)), case)
            if t > pi_plus_d(t):
                rep.check("eta-lt", eta_of(h(lj)) < eta_of(h(t)), case)
    rep.extra["tuples"] = done


# relation-engine corpora

def alpha_pool() -> List[Ord]:
    idx = [ONE, nat(5), W, succ(W), mul(W, nat(2)), W2, add(W2, W), w_pow(3), w_pow(W),
           add(w_pow(W), ONE), mul(w_pow(W), nat(2)), eps(0), add(eps(0), W)]
    return [eps(i) for i in idx]


def t_pool(alpha: Ord) -> List[Ord]:
    a2, a3 = mul(alpha, nat(2)), mul(alpha, nat(3))
    raw = [alpha, succ(alpha), add(alpha, W), a2, succ(a2), add(a2, nat(2)), add(a2, nat(3)),
           add(a2, W), add(add(a2, W), ONE), add(a2, W2), add(add(a2, W2), nat(2)),
           add(a2, w_pow(W)), add(a2, alpha), succ(add(a2, alpha)), a3, succ(a3),
           omega_pow(succ(alpha)), omega_pow(a2)]
    return raw


def a_eq_g_corpus() -> List[Tuple[Ord, Ord, Ord]]:
    out = []
    for alpha in alpha_pool():
        betas = sorted({b for b in alpha_pool() + [eps(0), eps(2), eps(W)] if b <= alpha})
        for t in t_pool(alpha):
            for b in betas:
                out.append((b, t, alpha))
    return out


def restriction_corpus() -> List[Tuple[Ord, Ord, Ord]]:
    pairs = [(eps(W), eps(mul(W, nat(2)))), (eps(succ(W)), eps(W2)), (eps(W2), eps(w_pow(W))),
             (eps(mul(W, nat(2))), eps(w_pow(3))), (eps(add(W2, W)), eps(eps(0)))]
    out = []
    for alpha, beta in pairs:
        b2 = mul(beta, nat(2))
        ts = [add(b2, nat(1)), add(b2, nat(2)), add(b2, W), add(add(b2, W), ONE), b2, succ(beta),
              add(b2, eps(0)), succ(add(b2, eps(0))), mul(beta, nat(3)), add(b2, W2)]
        out.extend((t, beta, alpha) for t in ts)
    return out


M_TABLE = [
    (eps(1), add(mul(eps(1), nat(2)), ZERO)),
    (eps(W), add(mul(eps(W), nat(2)), ONE)),
    (eps(W2), add(mul(eps(W2), nat(2)), nat(2))),
    (eps(w_pow(3)), add(mul(eps(w_pow(3)), nat(2)), nat(3))),
    (eps(w_pow(W)), add(mul(eps(w_pow(W)), nat(2)), W)),
]


def suite_m_table(rep: Report, rng: random.Random, engine: Optional[Engine] = None) -> None:
    import time

    E = engine or Engine()
    rows = []
    for alpha, expected in M_TABLE:
        start = time.perf_counter()
        got, v = E.m_of(alpha)
        took = time.perf_counter() - start
        rep.check("oracle-agrees", m_iterated(alpha) == expected, alpha)
        rep.check("value", got == expected, alpha)
        rep.check("certified", v.certified, alpha)
        rep.check("under-1s", took < 1.0, alpha)
        rows.append({"alpha": str(alpha), "m": str(got), "expected": str(expected),
                     "exactness": v.exactness, "seconds": round(took, 4)})
    rep.extra["rows"] = rows


def suite_a_eq_g(rep: Report, rng: random.Random, engine: Optional[Engine] = None) -> None:
    E = engine or Engine()
    compared = 0
    for beta, t, alpha in a_eq_g_corpus():
        a = E.a_member(beta, t, alpha)
        g = E.g_member(beta, t, alpha)
        if not (a.certified and g.certified):
            rep.skip()
            continue
        compared += 1
        rep.check("agree", a.value == g.value, (beta, t, alpha))
    rep.extra["compared"] = compared


def suite_restriction(rep: Report, rng: random.Random, engine: Optional[Engine] = None) -> None:
    E = engine or Engine()
    for t, beta, alpha in restriction_corpus():
        probes = sorted({g for g in eps_below(succ(alpha)) if g > max_ep_below(t, beta)} | {alpha})
        r = E.restriction_check(t, beta, alpha, probes)
        rep.check("no-certified-disagreement", r["failures"] == 0, (t, beta, alpha))
        rep.check("rows-certified", all(row["upper"] != "Unknown" and row["lower"] != "Unknown"
                                        for row in r["rows"]), (t, beta, alpha))
    rep.extra["triples"] = len(restriction_corpus())


# witness corroboration


def le1_queries(engine: Engine) -> List[Tuple[Ord, Ord, object]]:
    out = []
    for name, query, v in engine.log:
        if name == "le1" and v.certified:
            out.append((query[0], query[1], v))
    return out


def corroborate(alpha: Ord, s: Ord, value: bool, rep: Report, fuel: int = 32) -> None:
    """Check one certified verdict of alpha <=_1 s with s = eta(t) + 1."""
    t = pred_if_succ(s)
    Z = set(b_t(t)) | {alpha}
    case = (alpha, s)
    if value:
        w = subst_witness_search(alpha, Z, fuel)
        rep.check("true-has-witness", w is not None, case)
        if w is not None:
            rep.check("dominance", dominance(w, alpha), case)
            r = min_iso(alpha, Z, fuel=6)
            rep.check("min-iso", r["status"] == "ok", case)
        return
    i = alpha.index
    if i and is_limit(i):
        delta = eps(_drop_one(cnf(i)))
    elif i:
        delta = eps(pred_if_succ(i))
    else:
        delta = None
    if delta is not None:
        Z.add(delta)
    # when t is already past m(alpha) the refutation sits at the frontier
    m = m_closed(alpha)
    if m < t:
        Z |= set(b_t(m))
    w = subst_witness_search(alpha, Z, fuel)
    rep.check("false-has-no-grid-witness", w is None, case)


def suite_witness(rep: Report, rng: random.Random, engine: Optional[Engine] = None) -> None:
    E = engine or Engine()
    if not E.log:
        suite_m_table(Report("m-table", rep.seed, 0), rng, E)
        suite_a_eq_g(Report("a-eq-g", rep.seed, 0), rng, E)
    seen = set()
    for alpha, s, v in le1_queries(E):
        a2, a3 = mul(alpha, nat(2)), mul(alpha, nat(3))
        if not (a2 < s < a3 and not is_limit(s)) or (alpha, s) in seen:
            continue
        seen.add((alpha, s))
        corroborate(alpha, s, bool(v.value), rep)
    rep.extra["queries"] = len(seen)


# engine axioms


def check_axioms(engine: Engine, rep: Report) -> None:
    probe = Engine(engine.probes)
    seen = set()
    for name, query, v in list(engine.log):
        if v.certified:
            try:
                replay_verdict(v)
                rep.check("replay", True)
            except ReplayError as exc:
                rep.check("replay", False, {"query": list(query), "error": str(exc)})
        if name != "le1" or (query in seen):
            continue
        seen.add(query)
        alpha, s = query
        if not v.certified:
            continue
        if v.value is Truth.TRUE:
            for s2 in _connected_probes(alpha, s):
                w = probe.le1_decide(alpha, s2)
                rep.check("connectedness", not (w.certified and w.value is Truth.FALSE), (alpha, s, s2))
        elif is_limit(s) and alpha < s < next_epsilon(alpha):
            seq = l_seq(s, alpha)
            # approximants close to s, not just the first few
            approx = [seq.eval(j) for j in dominating_candidates(seq.index_bound, s, 4)]
            vs = [probe.le1_decide(alpha, x) for x in approx]
            all_true = bool(vs) and all(x.certified and x.value is Truth.TRUE for x in vs)
            rep.check("continuity", not all_true, (alpha, s))
        big = Engine(engine.probes).le1_decide(alpha, s, 4 * 64)
        rep.check("fuel-monotone", big.certified and big.value == v.value, (alpha, s))
        if v.fuel_used > 1:
            small = Engine(engine.probes).le1_decide(alpha, s, v.fuel_used - 1)
            rep.check("fuel-unknown-below", small.value is Truth.UNKNOWN or small.value == v.value, (alpha, s))


def _connected_probes(alpha: Ord, s: Ord) -> List[Ord]:
    out = {alpha, mul(alpha, nat(2))}
    p = pred_if_succ(s)
    if p is not None and p >= alpha:
        out.add(p)
    if pi_of(s) >= alpha:
        out.add(pi_of(s))
    return sorted(x for x in out if alpha <= x <= s)


def suite_engine_axioms(rep: Report, rng: random.Random, engine: Optional[Engine] = None) -> None:
    E = engine or Engine()
    if not E.log:
        suite_m_table(Report("m-table", rep.seed, 0), rng, E)
        suite_a_eq_g(Report("a-eq-g", rep.seed, 0), rng, E)
        suite_restriction(Report("restriction", rep.seed, 0), rng, E)
    for alpha in alpha_pool():
        for t in t_pool(alpha):
            E.le1_decide(alpha, t)
    check_axioms(E, rep)
    rep.extra["log_size"] = len(E.log)


SUITES: Dict[str, Callable] = {
    "cnf-laws": suite_cnf_laws,
    "subst-props": suite_subst_props,
    "eta-props": suite_eta_props,
    "wilken": suite_wilken,
    "cover-props": suite_cover_props,
    "fundseq-props": suite_fundseq_props,
    "engine-axioms": suite_engine_axioms,
    "a-eq-g": suite_a_eq_g,
    "restriction": suite_restriction,
    "m-table": suite_m_table,
    "witness": suite_witness,
}

DEFAULT_BUDGET = {"cnf-laws": 10_000, "subst-props": 1000, "eta-props": 1000, "cover-props": 500,
                  "fundseq-props": 200}

ENGINE_SUITES = {"engine-axioms", "a-eq-g", "restriction", "m-table", "witness"}


class UnknownSuite(KeyError):
    pass


def run_suite(name: str, seed: int = 0, budget: Optional[int] = None,
              engine: Optional[Engine] = None) -> dict:
    if name not in SUITES:
        raise UnknownSuite(name)
    if budget is None:
        budget = DEFAULT_BUDGET.get(name, 0)
    rep = Report(name, seed, budget)
    rng = random.Random(seed)
    if name in ENGINE_SUITES:
        SUITES[name](rep, rng, engine)
    else:
        SUITES[name](rep, rng)
    return rep.to_json()
