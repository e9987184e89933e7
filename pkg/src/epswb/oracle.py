"""Brute-force oracles: closed-form m and <=_1, isomorphism checking on finite
sets, substitution-witness search and minimal isomorphisms."""

from __future__ import annotations

import random
from typing import Callable, Iterable, List, Optional

from .covering import delta_cover
from .eta import m_non_epsilon, wilken_le1_plus
from .fundseq import index_fs, subterms
from .ordinal import (
    ONE,
    ZERO,
    Ord,
    add,
    eps,
    is_epsilon,
    is_limit,
    is_principal,
    leading_exponent,
    lim_depth_of_index,
    monomial,
    mul,
    nat,
    omega_pow,
    pred_if_succ,
    succ,
)
from .subst import FinOrdSet, IsoWitness, in_M, max_ep_below, subst

Le1Oracle = Callable[[Ord, Ord], bool]


# closed-form oracles


def lim_depth_oracle(i: Ord) -> Ord:
    """Largest d with i in Lim^d(OR), found by testing candidate depths.

    The true set of depths is an initial segment [0, d]; d is some CNF
    exponent of i, so the candidates are the subterms of i.
    """
    best = ZERO
    for c in subterms(i) | {nat(n) for n in range(9)}:
        if c > best and lim_depth_of_index(i, c):
            best = c
    return best


def m_iterated(alpha: Ord) -> Ord:
    """m(alpha) for epsilon alpha from iterated Lim membership of its index."""
    i = alpha.index
    n = 0
    while n < 8 and lim_depth_of_index(i, n + 1):
        n += 1
    depth = nat(n) if n < 8 else lim_depth_oracle(i)
    return add(mul(alpha, nat(2)), depth)


def m_closed(x: Ord) -> Ord:
    """Largest y with x <=_1 y, for any x in the notation."""
    if not x:
        return x
    if is_epsilon(x):
        return m_iterated(x)
    return m_non_epsilon(x)


def le1_closed(x: Ord, y: Ord) -> bool:
    return x <= y <= m_closed(x)


# isomorphism checking


def iso_check(w: IsoWitness, le1_oracle: Le1Oracle = le1_closed, check_omega_pow: bool = True) -> dict:
    """Check that w preserves <, +, optionally omega^x, and <=_1 on its domain."""
    dom = sorted(w.pairs)
    h = w.pairs

    def fail(kind: str, *xs: Ord) -> dict:
        return {"ok": False, "kind": kind, "pair": [str(x) for x in xs]}

    for x in dom:
        if x < w.fixed_below and h[x] != x:
            return fail("fixed", x)
    for a, b in zip(dom, dom[1:]):
        if not h[a] < h[b]:
            return fail("order", a, b)
    dset = set(dom)
    image = {v: k for k, v in h.items()}
    for x in dom:
        for y in dom:
            z = add(x, y)
            hz = add(h[x], h[y])
            if (z in dset) != (hz in image) or (z in dset and h[z] != hz):
                return fail("plus", x, y)
    if check_omega_pow:
        for x in dom:
            z = omega_pow(x)
            hz = omega_pow(h[x])
            if (z in dset) != (hz in image) or (z in dset and h[z] != hz):
                return fail("omega_pow", x)
    for i, x in enumerate(dom):
        for y in dom[i:]:
            if le1_oracle(x, y) != le1_oracle(h[x], h[y]):
                return fail("le1", x, y)
    return {"ok": True}


def identity_witness(B: Iterable[Ord]) -> IsoWitness:
    B = list(B)
    top = succ(max(B)) if B else ONE
    return IsoWitness({b: b for b in B}, top)


# substitution witnesses


def eps_grid(alpha: Ord, count: int) -> List[Ord]:
    """Epsilons below alpha along the canonical sequence of its index."""
    out: List[Ord] = []
    i = alpha.index
    while count > 0 and i:
        if is_limit(i):
            out.extend(eps(index_fs(i, n)) for n in range(1, count + 1))
            break
        k = pred_if_succ(i)
        out.append(eps(k))
        count -= 1
        i = k
    return out


def _admissible(alpha: Ord, Z: FinOrdSet, gamma: Ord) -> bool:
    if max_ep_below_set(Z, alpha) >= gamma:
        return False
    bound = ZERO
    for a in Z:
        if a < alpha:
            m = m_closed(a)
            if m < alpha and m > bound:
                bound = m
    return gamma > bound


def max_ep_below_set(Z: Iterable[Ord], alpha: Ord) -> Ord:
    return max((max_ep_below(z, alpha) for z in Z), default=ZERO)


def subst_witness_search(alpha: Ord, Z: Iterable[Ord], fuel: int = 64,
                         le1_oracle: Le1Oracle = le1_closed) -> Optional[IsoWitness]:
    """First gamma on the grid whose substitution is an isomorphism on Z + {alpha}."""
    Z = FinOrdSet(Z)
    if all(z < alpha for z in Z):
        return identity_witness(Z)
    dom = FinOrdSet(set(Z) | {alpha})
    for gamma in eps_grid(alpha, fuel):
        if not _admissible(alpha, dom, gamma):
            continue
        if not all(in_M(z, alpha, gamma) for z in dom):
            continue
        w = IsoWitness({z: subst(z, alpha, gamma) for z in dom}, alpha)
        if iso_check(w, le1_oracle)["ok"]:
            return w
    return None


def dominance(w: IsoWitness, alpha: Ord) -> bool:
    """x[alpha := h(alpha)] <= h(x) on the whole domain."""
    g = w.pairs.get(alpha)
    if g is None:
        return True
    return all(subst(x, alpha, g) <= v for x, v in w.pairs.items() if in_M(x, alpha, g))


def _lex_key(w: IsoWitness) -> tuple:
    return tuple(w.pairs[x] for x in sorted(w.pairs))


def min_iso(alpha: Ord, B: Iterable[Ord], fuel: int = 16, le1_oracle: Le1Oracle = le1_closed) -> dict:
    """Lexicographically least isomorphism on Delta(alpha, B) over a finite pool.

    The pool holds the grid substitutions and single-point perturbations of
    each (one value moved up by one or down to another grid substitution).
    """
    B = FinOrdSet(set(B) | {alpha})
    dom = delta_cover(alpha, B)
    pool: List[tuple] = []
    grid = eps_grid(alpha, fuel) if fuel > 0 else []
    subs = []
    for gamma in grid:
        if _admissible(alpha, dom, gamma) and all(in_M(x, alpha, gamma) for x in dom):
            subs.append(gamma)
    for gamma in subs:
        base = {x: subst(x, alpha, gamma) for x in dom}
        pool.append((IsoWitness(base, alpha), True))
        for x in dom:
            if x < alpha:
                continue
            up = dict(base)
            up[x] = succ(base[x])
            pool.append((IsoWitness(up, alpha), False))
            for other in subs:
                if other != gamma:
                    alt = dict(base)
                    alt[x] = subst(x, alpha, other)
                    pool.append((IsoWitness(alt, alpha), False))
    passing = [(w, pure) for w, pure in pool if iso_check(w, le1_oracle)["ok"]]
    report = {
        "alpha": str(alpha),
        "domain": [str(x) for x in dom],
        "pool": len(pool),
        "passing": len(passing),
        "note": "minimum over pool",
        "dominance_failures": [],
    }
    for w, _ in passing:
        if not dominance(w, alpha):
            report["dominance_failures"].append(
                {str(k): str(v) for k, v in sorted(w.pairs.items())})
    if not passing:
        report["status"] = "inconclusive"
        return report
    best, pure = min(passing, key=lambda p: _lex_key(p[0]))
    g = best.pairs[alpha]
    report["minimum_gamma"] = str(g)
    report["minimum_is_substitution"] = all(best.pairs[x] == subst(x, alpha, g) for x in dom)
    report["status"] = "ok" if report["minimum_is_substitution"] and not report["dominance_failures"] else "fail"
    return report


# alpha <_1 alpha + l + 1 through cofinal principal witnesses


def lt1_succ_criterion(alpha: Ord, l: Ord, probes: int = 8) -> dict:
    """Compare the divisibility test with a probed cofinal-sequence criterion."""
    lhs = wilken_le1_plus(alpha, succ(l))
    cofinal = False
    rows = []
    if is_principal(alpha) and not is_epsilon(alpha):
        A = leading_exponent(alpha)
        if is_limit(A):
            cands = set()
            for n in range(1, probes + 1):
                An = index_fs(A, n)
                cands.add(An)
                cands.add(add(An, omega_pow(l)))
            cands.update(mul(omega_pow(l), nat(k)) for k in range(1, probes + 1))
            xis = sorted(omega_pow(c) for c in cands if c < A and c)
            good = [x for x in xis if l < x and (not l or wilken_le1_plus(x, l))]
            cofinal = True
            for n in range(1, probes + 1):
                floor = omega_pow(index_fs(A, n))
                hit = next((x for x in good if x >= floor), None)
                rows.append({"n": n, "floor": str(floor), "witness": None if hit is None else str(hit)})
                cofinal = cofinal and hit is not None
    return {"alpha": str(alpha), "l": str(l), "divisibility": lhs, "cofinal_probe": cofinal,
            "rows": rows, "agree": lhs == cofinal}


# random terms


def random_ord(rng: random.Random, depth: int = 6, eps_nesting: int = 3, width: int = 3) -> Ord:
    r = rng.random()
    if depth <= 0 or r < 0.25:
        return nat(rng.randrange(0, 6))
    if eps_nesting > 0 and r < 0.4:
        return eps(random_ord(rng, depth - 1, eps_nesting - 1, width))
    out = ZERO
    for _ in range(rng.randint(1, width)):
        e = random_ord(rng, rng.randrange(0, depth), eps_nesting, max(1, width - 1))
        out = add(out, monomial(e, rng.randint(1, 4)))
    return out


def random_below_eps(rng: random.Random, alpha: Ord, atoms: List[Ord], depth: int = 3) -> Ord:
    """A random term below alpha^+ built from alpha, the given smaller epsilons and naturals."""
    r = rng.random()
    if depth <= 0 or r < 0.2:
        return nat(rng.randrange(0, 5))
    if r < 0.45:
        return rng.choice([alpha] + atoms)
    out = ZERO
    for _ in range(rng.randint(1, 3)):
        e = random_below_eps(rng, alpha, atoms, depth - 1)
        out = add(out, mul(omega_pow(e), nat(rng.randint(1, 3))))
    return out
