"""Command-line front end."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .cert import Truth, Verdict
from .covering import c_cover, d_cover
from .engine import DEFAULT_FUEL, DEFAULT_PROBES, Engine
from .eta import d_of, eta_of, m_non_epsilon, pi_of, wilken_le1_plus
from .fundseq import l_seq
from .ordinal import OrdinalError, Ord, cmp, eps_depth, is_epsilon, parse, succ
from .subst import ep_set, in_M, subst
from .suites import SUITES, UnknownSuite, run_suite

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN, EXIT_SUITE = 0, 1, 2, 3


@dataclass(frozen=True)
class Config:
    fuel: int = DEFAULT_FUEL
    probes: int = DEFAULT_PROBES
    seed: int = 0
    output: str = "text"
    max_eps_depth: int = 32


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        raise CliError(message)


def _default_fuel() -> int:
    raw = os.environ.get("EPSWB_FUEL")
    if raw is None:
        return DEFAULT_FUEL
    try:
        fuel = int(raw)
    except ValueError:
        raise CliError(f"EPSWB_FUEL must be an integer, got {raw!r}")
    if fuel <= 0:
        raise CliError("EPSWB_FUEL must be positive")
    return fuel


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--fuel", type=int, default=None, help="reduction budget per query")
    common.add_argument("--probes", type=int, default=DEFAULT_PROBES, help="probe count K")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--max-eps-depth", type=int, default=32, help="nesting guard for e(...)")

    p = _Parser(prog="epswb", description="Ordinal notation and <=_1 decision tools.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def cmd(name: str, help: str, *args: str):
        sp = sub.add_parser(name, help=help, parents=[common])
        for a in args:
            sp.add_argument(a)
        return sp

    cmd("eval", "print the canonical form", "expr")
    cmd("cmp", "compare two ordinals", "a", "b")
    cmd("ep", "epsilon numbers occurring in x", "x")
    cmd("subst", "x[alpha := e]", "x", "alpha", "e")
    cmd("inM", "membership in M(alpha, e)", "q", "alpha", "e")
    cmd("eta", "pi, d pi and eta of t", "t")
    cmd("m", "largest beta with alpha <=_1 beta", "alpha")
    cmd("wilken", "alpha <_1 alpha + xi", "alpha", "xi")
    cv = cmd("cover", "the cover C(delta)", "delta")
    cv.add_argument("--alpha", default=None, help="also print D(alpha, delta)")
    fs = cmd("fundseq", "members of the fundamental sequence of t", "t", "alpha")
    fs.add_argument("--indices", default="1,2,3", help="comma separated indices")
    cmd("le1", "decide a <=_1 s", "a", "s")
    cmd("a-member", "beta in A(t) for the interval of alpha", "beta", "t", "alpha")
    cmd("class2", "probe alpha <_1 alpha^+", "alpha")
    vf = cmd("verify", "run a property suite", "suite")
    vf.add_argument("--seed", type=int, default=0)
    vf.add_argument("--budget", type=int, default=None)
    return p


class App:
    def __init__(self, config: Config, out=None):
        self.config = config
        self.engine = Engine(config.probes)
        self.out = out or sys.stdout

    def ord(self, text: str) -> Ord:
        x = parse(text)
        if eps_depth(x) > self.config.max_eps_depth:
            raise CliError(f"epsilon nesting of {text!r} exceeds {self.config.max_eps_depth}")
        return x

    def emit(self, text: str, payload: dict) -> None:
        if self.config.output == "json":
            payload = {"schema_version": 1, **payload}
            self.out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
        else:
            self.out.write(text + "\n")

    def verdict(self, v: Verdict, query: dict) -> int:
        if self.config.output == "json":
            self.out.write(json.dumps(v.to_json(query), sort_keys=True, indent=2) + "\n")
        else:
            self.out.write(str(v) + "\n")
        return EXIT_UNKNOWN if v.value is Truth.UNKNOWN else EXIT_OK

    def run(self, ns: argparse.Namespace) -> int:
        handler = getattr(self, "do_" + ns.cmd.replace("-", "_"))
        return handler(ns)

    def do_eval(self, ns) -> int:
        x = self.ord(ns.expr)
        self.emit(str(x), {"value": str(x)})
        return EXIT_OK

    def do_cmp(self, ns) -> int:
        c = cmp(self.ord(ns.a), self.ord(ns.b))
        self.emit(c.name, {"value": c.name})
        return EXIT_OK

    def do_ep(self, ns) -> int:
        xs = [str(x) for x in ep_set(self.ord(ns.x))]
        self.emit("{" + ", ".join(xs) + "}", {"value": xs})
        return EXIT_OK

    def do_subst(self, ns) -> int:
        y = subst(self.ord(ns.x), self.ord(ns.alpha), self.ord(ns.e))
        self.emit(str(y), {"value": str(y)})
        return EXIT_OK

    def do_inM(self, ns) -> int:
        b = in_M(self.ord(ns.q), self.ord(ns.alpha), self.ord(ns.e))
        self.emit(str(b), {"value": b})
        return EXIT_OK

    def do_eta(self, ns) -> int:
        t = self.ord(ns.t)
        p = pi_of(t)
        d, e = d_of(p), eta_of(t)
        self.emit(f"pi = {p}\nd pi = {d}\neta = {e}", {"pi": str(p), "d_pi": str(d), "eta": str(e)})
        return EXIT_OK

    def do_m(self, ns) -> int:
        a = self.ord(ns.alpha)
        if not is_epsilon(a):
            m = a if not a else m_non_epsilon(a)
            self.emit(str(m), {"value": str(m), "exactness": "certified"})
            return EXIT_OK
        m, v = self.engine.m_of(a, self.config.fuel)
        if self.config.output == "json":
            payload = v.to_json({"op": "m", "alpha": a})
            payload["m"] = None if m is None else str(m)
            self.out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
        else:
            self.out.write(("Unknown" if m is None else str(m)) + f" ({v.exactness})\n")
        return EXIT_UNKNOWN if m is None else EXIT_OK

    def do_wilken(self, ns) -> int:
        b = wilken_le1_plus(self.ord(ns.alpha), self.ord(ns.xi))
        self.emit(str(b), {"value": b})
        return EXIT_OK

    def do_cover(self, ns) -> int:
        delta = self.ord(ns.delta)
        C = c_cover(delta)
        top = succ(eta_of(delta)) if delta else None
        bounded = top is None or all(x < top for x in C)
        lines = ["{" + ", ".join(map(str, C)) + "}", f"size = {len(C)}", f"below eta+1: {bounded}"]
        payload = {"cover": [str(x) for x in C], "size": len(C), "bounded": bounded}
        if ns.alpha is not None:
            D = d_cover(self.ord(ns.alpha), delta)
            lines.append("D = {" + ", ".join(map(str, D)) + "}")
            payload["D"] = [str(x) for x in D]
        self.emit("\n".join(lines), payload)
        return EXIT_OK

    def do_fundseq(self, ns) -> int:
        t, a = self.ord(ns.t), self.ord(ns.alpha)
        seq = l_seq(t, a)
        js = [self.ord(j.strip()) for j in ns.indices.split(",") if j.strip()]
        rows = [(j, seq.eval(j)) for j in js]
        text = [f"index bound = {seq.index_bound}", f"case = {seq.case}"]
        text += [f"l[{j}] = {v}" for j, v in rows]
        self.emit("\n".join(text), {"index_bound": str(seq.index_bound), "case": seq.case,
                                    "values": {str(j): str(v) for j, v in rows}})
        return EXIT_OK

    def do_le1(self, ns) -> int:
        a, s = self.ord(ns.a), self.ord(ns.s)
        v = self.engine.le1_any(a, s, self.config.fuel)
        return self.verdict(v, {"op": "le1", "alpha": a, "s": s})

    def do_a_member(self, ns) -> int:
        b, t, a = self.ord(ns.beta), self.ord(ns.t), self.ord(ns.alpha)
        v = self.engine.a_member(b, t, a, self.config.fuel)
        return self.verdict(v, {"op": "a-member", "beta": b, "t": t, "alpha": a})

    def do_class2(self, ns) -> int:
        a = self.ord(ns.alpha)
        v = self.engine.class2_probe(a, None, self.config.fuel)
        return self.verdict(v, {"op": "class2", "alpha": a})

    def do_verify(self, ns) -> int:
        try:
            rep = run_suite(ns.suite, ns.seed, ns.budget)
        except UnknownSuite:
            raise CliError(f"unknown suite {ns.suite!r}; choose from {', '.join(SUITES)}")
        text = f"{rep['suite']}: {rep['passed']} passed, {rep['failed']} failed, {rep['skipped']} skipped (seed {rep['seed']})"
        for f in rep["failures"]:
            text += f"\n  FAIL {f['check']}: {f['case']}"
        self.emit(text, rep)
        return EXIT_OK if rep["failed"] == 0 else EXIT_SUITE


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        ns = build_parser().parse_args(argv)
        fuel = ns.fuel if ns.fuel is not None else _default_fuel()
        if fuel <= 0 or ns.probes <= 0 or ns.max_eps_depth <= 0:
            raise CliError("--fuel, --probes and --max-eps-depth must be positive")
        config = Config(fuel=fuel, probes=ns.probes, seed=getattr(ns, "seed", 0),
                        output="json" if ns.json else "text", max_eps_depth=ns.max_eps_depth)
        return App(config, out).run(ns)
    except (CliError, OrdinalError) as exc:
        print(f"epswb: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
