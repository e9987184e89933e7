"""Canonical ordinal terms below the first fixed point of the epsilon function.

A term is zero, a Cantor normal form sum of monomials, or an epsilon atom
``e(i)``.  Constructors keep every value canonical, so structural equality is
ordinal equality.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple, Union

COEFF_LIMIT = 2**32


class OrdinalError(ValueError):
    pass


class CoefficientOverflow(OrdinalError):
    pass


class ParseError(OrdinalError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class Cmp(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


Term = Tuple["Ord", int]
OrdLike = Union["Ord", int]


class Ord:
    """An immutable canonical ordinal term.

    ``terms`` holds (exponent, coefficient) pairs with strictly decreasing
    exponents; it is empty for zero and for epsilon atoms.  ``index`` is set
    only for epsilon atoms.
    """

    __slots__ = ("terms", "index", "_hash")

    def __init__(self, terms: Tuple[Term, ...] = (), index: Optional["Ord"] = None):
        self.terms = terms
        self.index = index
        self._hash = hash((terms, index))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if isinstance(other, int):
            other = nat(other) if other >= 0 else None
        if not isinstance(other, Ord):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.index == other.index
            and self.terms == other.terms
        )

    def __lt__(self, other: OrdLike) -> bool:
        return _cmp(self, coerce(other)) < 0

    def __le__(self, other: OrdLike) -> bool:
        return _cmp(self, coerce(other)) <= 0

    def __gt__(self, other: OrdLike) -> bool:
        return _cmp(self, coerce(other)) > 0

    def __ge__(self, other: OrdLike) -> bool:
        return _cmp(self, coerce(other)) >= 0

    def __add__(self, other: OrdLike) -> "Ord":
        return add(self, coerce(other))

    def __radd__(self, other: OrdLike) -> "Ord":
        return add(coerce(other), self)

    def __mul__(self, other: OrdLike) -> "Ord":
        return mul(self, coerce(other))

    def __rmul__(self, other: OrdLike) -> "Ord":
        return mul(coerce(other), self)

    def __bool__(self) -> bool:
        return bool(self.terms) or self.index is not None

    def __repr__(self) -> str:
        return to_str(self)

    __str__ = __repr__


ZERO = Ord()


def _mk(terms: Sequence[Term]) -> Ord:
    if not terms:
        return ZERO
    for _, c in terms:
        if c >= COEFF_LIMIT:
            raise CoefficientOverflow(f"coefficient {c} exceeds 2^32-1")
    if len(terms) == 1 and terms[0][1] == 1 and terms[0][0].index is not None:
        return terms[0][0]
    return Ord(tuple(terms))


@lru_cache(maxsize=4096)
def nat(n: int) -> Ord:
    if n < 0:
        raise OrdinalError("negative natural")
    if n == 0:
        return ZERO
    return _mk([(ZERO, n)])


ONE = nat(1)
OMEGA = _mk([(ONE, 1)])


def coerce(x: OrdLike) -> Ord:
    if isinstance(x, Ord):
        return x
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"cannot use {x!r} as an ordinal")
    return nat(x)


def eps(i: OrdLike) -> Ord:
    return Ord((), coerce(i))


def cnf(x: Ord) -> Tuple[Term, ...]:
    """CNF monomials of x; an epsilon atom is its own single monomial."""
    if x.index is not None:
        return ((x, 1),)
    return x.terms


@lru_cache(maxsize=1 << 18)
def _cmp(a: Ord, b: Ord) -> int:
    if a is b:
        return 0
    if a.index is not None and b.index is not None:
        return _cmp(a.index, b.index)
    ta, tb = cnf(a), cnf(b)
    for (ea, ca), (eb, cb) in zip(ta, tb):
        r = _cmp(ea, eb)
        if r:
            return r
        if ca != cb:
            return -1 if ca < cb else 1
    if len(ta) == len(tb):
        return 0
    return -1 if len(ta) < len(tb) else 1


def cmp(a: OrdLike, b: OrdLike) -> Cmp:
    return Cmp(_cmp(coerce(a), coerce(b)))


def omax(*xs: Ord) -> Ord:
    best = xs[0]
    for x in xs[1:]:
        if _cmp(x, best) > 0:
            best = x
    return best


# arithmetic


@lru_cache(maxsize=1 << 16)
def add(a: Ord, b: Ord) -> Ord:
    if not b:
        return a
    if not a:
        return b
    tb = cnf(b)
    lead, lc = tb[0]
    out = []
    merged = False
    for e, c in cnf(a):
        r = _cmp(e, lead)
        if r > 0:
            out.append((e, c))
            continue
        if r == 0:
            out.append((e, c + lc))
            merged = True
        break
    out.extend(tb[1:] if merged else tb)
    return _mk(out)


@lru_cache(maxsize=1 << 16)
def mul(a: Ord, b: Ord) -> Ord:
    if not a or not b:
        return ZERO
    ta = cnf(a)
    lead, lc = ta[0]
    result = ZERO
    for e, c in cnf(b):
        if not e:
            part = _mk([(lead, lc * c)] + list(ta[1:]))
        else:
            part = _mk([(add(lead, e), c)])
        result = add(result, part)
    return result


def omega_pow(x: Ord) -> Ord:
    if x.index is not None:
        return x
    return _mk([(x, 1)])


def monomial(exponent: Ord, coeff: int = 1) -> Ord:
    if coeff == 0:
        return ZERO
    return mul(omega_pow(exponent), nat(coeff))


def from_terms(terms: Iterable[Term]) -> Ord:
    result = ZERO
    for e, c in terms:
        result = add(result, monomial(e, c))
    return result


def succ(x: Ord) -> Ord:
    return add(x, ONE)


def is_zero(x: Ord) -> bool:
    return not x


def is_limit(x: Ord) -> bool:
    if not x:
        return False
    return bool(cnf(x)[-1][0])


def is_successor(x: Ord) -> bool:
    return bool(x) and not is_limit(x)


def pred_if_succ(x: Ord) -> Optional[Ord]:
    if not x or is_limit(x):
        return None
    terms = list(x.terms)
    e, c = terms[-1]
    if c == 1:
        terms.pop()
    else:
        terms[-1] = (e, c - 1)
    return _mk(terms)


def is_natural(x: Ord) -> bool:
    return not x or (x.index is None and len(x.terms) == 1 and not x.terms[0][0])


def to_int(x: Ord) -> int:
    if not x:
        return 0
    if not is_natural(x):
        raise OrdinalError(f"{x} is not a natural number")
    return x.terms[0][1]


def is_principal(x: Ord) -> bool:
    if x.index is not None:
        return True
    return len(x.terms) == 1 and x.terms[0][1] == 1


def is_epsilon(x: Ord) -> bool:
    return x.index is not None


def eps_index(x: Ord) -> Optional[Ord]:
    return x.index


def leading_exponent(x: Ord) -> Ord:
    if not x:
        raise OrdinalError("zero has no leading exponent")
    return cnf(x)[0][0]


def last_exponent(x: Ord) -> Ord:
    """Least CNF exponent of x."""
    if not x:
        raise OrdinalError("zero has no CNF exponent")
    return cnf(x)[-1][0]


def exponents(x: Ord) -> Tuple[Ord, ...]:
    return tuple(e for e, _ in cnf(x))


def next_epsilon(x: Ord) -> Ord:
    """Least epsilon number strictly above x."""
    if x.index is not None:
        return eps(succ(x.index))
    if not x:
        return eps(ZERO)
    lead = x.terms[0][0]
    if lead.index is not None:
        return eps(succ(lead.index))
    if not lead:
        return eps(ZERO)
    return next_epsilon(lead)


def top_epsilon(x: Ord) -> Optional[Ord]:
    """Largest epsilon number <= x, or None below e(0)."""
    if x.index is not None:
        return x
    # for non-epsilon x the next epsilon always has index 0 or a successor
    p = pred_if_succ(next_epsilon(x).index)
    return None if p is None else eps(p)


def left_subtract(a: Ord, b: Ord) -> Optional[Ord]:
    """The unique c with a + c = b, or None when a > b."""
    r = _cmp(a, b)
    if r > 0:
        return None
    if r == 0:
        return ZERO
    ta, tb = cnf(a), cnf(b)
    for k, ((ea, ca), (eb, cb)) in enumerate(zip(ta, tb)):
        if ea != eb:
            return _mk(tb[k:])
        if ca != cb:
            return _mk([(eb, cb - ca)] + list(tb[k + 1 :]))
    return _mk(tb[len(ta) :])


def lim_depth_of_index(i: Ord, n: OrdLike) -> bool:
    """True iff i is a nonzero multiple of omega^n, i.e. i in Lim^n of the ordinals."""
    n = coerce(n)
    if not n:
        return True
    if not i:
        return False
    return _cmp(last_exponent(i), n) >= 0


def eps_depth(x: Ord) -> int:
    """Nesting depth of epsilon atoms in x."""
    if x.index is not None:
        return 1 + eps_depth(x.index)
    return max((eps_depth(e) for e, _ in x.terms), default=0)


# printing


def to_str(x: Ord) -> str:
    if x.index is not None:
        return f"e({to_str(x.index)})"
    if not x.terms:
        return "0"
    parts = []
    for e, c in x.terms:
        if not e:
            parts.append(str(c))
            continue
        if e.index is not None:
            base = to_str(e)
        elif e == ONE:
            base = "w"
        else:
            base = "w^" + _exponent_str(e)
        parts.append(base if c == 1 else f"{base}*{c}")
    return "+".join(parts)


def _exponent_str(e: Ord) -> str:
    if is_natural(e) or is_principal(e):
        return to_str(e)
    return f"({to_str(e)})"


# parsing


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, s: str) -> None:
        if self.peek() != s:
            found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            raise ParseError(f"expected {s!r}, found {found!r}", self.pos)
        self.pos += 1

    def natural(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected a natural number", start)
        value = int(self.text[start : self.pos])
        if value >= COEFF_LIMIT:
            raise CoefficientOverflow(f"natural {value} exceeds 2^32-1 at position {start}")
        return value

    def expr(self) -> Ord:
        value = self.term()
        while self.peek() == "+":
            self.pos += 1
            value = add(value, self.term())
        return value

    def term(self) -> Ord:
        value = self.atom()
        if self.peek() == "*":
            self.pos += 1
            value = mul(value, nat(self.natural()))
        return value

    def atom(self) -> Ord:
        c = self.peek()
        if c.isdigit():
            return nat(self.natural())
        if c == "w":
            self.pos += 1
            if self.peek() != "^":
                return OMEGA
            self.pos += 1
            if self.peek() == "(":
                self.pos += 1
                inner = self.expr()
                self.expect(")")
                return omega_pow(inner)
            return omega_pow(self.atom())
        if c == "e":
            self.pos += 1
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return eps(inner)
        if c == "(":
            self.pos += 1
            inner = self.expr()
            self.expect(")")
            return inner
        found = c or "end of input"
        raise ParseError(f"unexpected {found!r}", self.pos)


def parse(text: str) -> Ord:
    p = _Parser(text)
    value = p.expr()
    if p.peek():
        raise ParseError(f"trailing input {p.text[p.pos:]!r}", p.pos)
    return value


def O(x: Union[str, int, Ord]) -> Ord:
    """Shorthand: parse strings, lift ints, pass Ords through."""
    if isinstance(x, str):
        return parse(x)
    return coerce(x)
