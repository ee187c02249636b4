"""Exact polynomial arithmetic over a prime field.

Polynomials are immutable and stored sparsely as ``{exponents: coefficient}``
with coefficients reduced to ``[0, p)``.  The monomial order is fixed to
degree reverse lexicographic with ``x1 > x2 > ... > xn``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping, Sequence

DEFAULT_PRIME = 32003
MAX_EXPONENT = 0xFFFF

Monomial = tuple  # tuple[int, ...]


class AlgebraError(ValueError):
    pass


class ParseError(AlgebraError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("zero has no inverse in GF(p)")
    return pow(a, p - 2, p)


def symmetric(c: int, p: int) -> int:
    """Representative of ``c`` in ``(-p/2, p/2]``."""
    c %= p
    return c - p if c > p // 2 else c


# -- monomials ---------------------------------------------------------------

@lru_cache(maxsize=None)
def grevlex_key(m: Monomial) -> tuple:
    """Sort key: larger key means larger monomial in grevlex."""
    return (sum(m), tuple(-e for e in reversed(m)))


def compare(a: Monomial, b: Monomial) -> int:
    if len(a) != len(b):
        raise AlgebraError("monomials live in rings with different variable counts")
    ka, kb = grevlex_key(a), grevlex_key(b)
    return (ka > kb) - (ka < kb)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


@lru_cache(maxsize=None)
def monomials_of_degree(n: int, d: int) -> tuple:
    """All exponent vectors of total degree ``d`` in ``n`` variables, grevlex-descending."""
    if d < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=grevlex_key, reverse=True)
    return tuple(out)


# -- raw dict-polynomial helpers (hot paths work on these directly) ------------

def dict_add(f: dict, g: Mapping, p: int, scale: int = 1) -> dict:
    h = dict(f)
    for m, c in g.items():
        v = (h.get(m, 0) + scale * c) % p
        if v:
            h[m] = v
        else:
            h.pop(m, None)
    return h


def dict_mul(f: Mapping, g: Mapping, p: int) -> dict:
    h: dict = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            h[m] = (h.get(m, 0) + c1 * c2) % p
    return {m: c for m, c in h.items() if c}


def dict_scale(f: Mapping, mono: Monomial, c: int, p: int) -> dict:
    return {tuple(x + y for x, y in zip(m, mono)): (v * c) % p for m, v in f.items()}


def lead_monomial(f: Mapping) -> Monomial:
    return max(f, key=grevlex_key)


# -- ring and polynomials ----------------------------------------------------

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


@dataclass(frozen=True)
class Ring:
    """Graded polynomial ring ``GF(prime)[vars]`` with standard grading."""

    names: tuple
    prime: int = DEFAULT_PRIME

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if not self.names:
            raise AlgebraError("a ring needs at least one variable")
        if len(set(self.names)) != len(self.names):
            raise AlgebraError("variable names must be unique")
        for nm in self.names:
            if not _NAME_RE.match(nm):
                raise AlgebraError(f"bad variable name {nm!r}")
        if not is_prime(self.prime):
            raise AlgebraError(f"{self.prime} is not prime")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: 1})

    def constant(self, c: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def gens(self) -> tuple:
        return tuple(self.var(i) for i in range(self.nvars))

    def var(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.names.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): coeff})

    def __call__(self, text) -> "Polynomial":
        if isinstance(text, Polynomial):
            return text
        if isinstance(text, int):
            return self.constant(text)
        return self.parse(text)

    def parse(self, text: str, line: int = 1, column: int = 1) -> "Polynomial":
        return Polynomial(self, _parse_terms(self, text, line, column))

    def __str__(self):
        return f"GF({self.prime})[{', '.join(self.names)}]"


class Polynomial:
    """Immutable sparse polynomial; ``terms`` lists ``(coeff, exps)`` grevlex-descending."""

    __slots__ = ("ring", "_d", "_hash")

    def __init__(self, ring: Ring, data: Mapping = None):
        p = ring.prime
        d = {}
        for m, c in (data or {}).items():
            m = tuple(m)
            if len(m) != ring.nvars:
                raise AlgebraError("exponent vector length does not match the ring")
            if any(e < 0 or e > MAX_EXPONENT for e in m):
                raise AlgebraError(f"exponent out of range in {m}")
            c %= p
            if c:
                d[m] = c
        self.ring = ring
        self._d = d
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, d: dict) -> "Polynomial":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._d = d
        obj._hash = None
        return obj

    # access
    @property
    def data(self) -> Mapping:
        return self._d

    @property
    def terms(self) -> list:
        return [(self._d[m], m) for m in sorted(self._d, key=grevlex_key, reverse=True)]

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def __len__(self):
        return len(self._d)

    def degree(self) -> int:
        if not self._d:
            return -1
        return max(sum(m) for m in self._d)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._d}) <= 1

    def lead_monomial(self) -> Monomial:
        if not self._d:
            raise AlgebraError("zero polynomial has no leading monomial")
        return lead_monomial(self._d)

    def lead_coefficient(self) -> int:
        return self._d[self.lead_monomial()]

    def monic(self) -> "Polynomial":
        if not self._d:
            return self
        inv = inv_mod(self.lead_coefficient(), self.ring.prime)
        return Polynomial._raw(self.ring, {m: c * inv % self.ring.prime for m, c in self._d.items()})

    def constant_part(self) -> int:
        return self._d.get((0,) * self.ring.nvars, 0)

    def is_monomial(self) -> bool:
        return len(self._d) == 1

    # arithmetic
    def _check(self, other) -> "Polynomial":
        if isinstance(other, int):
            return self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ring != self.ring:
            if other.ring.prime != self.ring.prime:
                raise AlgebraError("modulus mismatch")
            raise AlgebraError("ring mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.ring, dict_add(self._d, other._d, self.ring.prime))

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.prime
        return Polynomial._raw(self.ring, {m: (-c) % p for m, c in self._d.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.ring, dict_add(self._d, other._d, self.ring.prime, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.ring, dict_mul(self._d, other._d, self.ring.prime))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise AlgebraError("negative powers are not polynomials")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._d.items())))
        return self._hash

    def __str__(self):
        return format_poly(self._d, self.ring.names, self.ring.prime)

    def __repr__(self):
        return f"Polynomial({self})"


# -- printing and parsing ----------------------------------------------------

def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for nm, e in zip(names, m):
        if e == 1:
            parts.append(nm)
        elif e > 1:
            parts.append(f"{nm}^{e}")
    return "*".join(parts)


def format_poly(d: Mapping, names: Sequence[str], p: int) -> str:
    if not d:
        return "0"
    out = []
    for m in sorted(d, key=grevlex_key, reverse=True):
        c = symmetric(d[m], p)
        sign = "-" if c < 0 else "+"
        c = abs(c)
        mono = format_monomial(m, names)
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        out.append((sign, body))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^]))")


def _tokens(text: str, line: int, column: int) -> Iterator[tuple]:
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        mt = _TOKEN_RE.match(text, pos)
        if not mt or mt.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", line, column + pos)
        kind = mt.lastgroup
        yield kind, mt.group(kind), column + mt.start(kind)
        pos = mt.end()


def _parse_terms(ring: Ring, text: str, line: int, column: int) -> dict:
    p = ring.prime
    index = {nm: i for i, nm in enumerate(ring.names)}
    toks = list(_tokens(text, line, column))
    if not toks:
        raise ParseError("empty polynomial", line, column)
    out: dict = {}
    i = 0
    sign = 1
    expect_term = True
    while i < len(toks):
        kind, val, col = toks[i]
        if kind == "op" and val in "+-" and expect_term:
            if val == "-":
                sign = -sign
            i += 1
            continue
        if not expect_term:
            if kind == "op" and val in "+-":
                sign = -1 if val == "-" else 1
                expect_term = True
                i += 1
                continue
            raise ParseError(f"expected '+' or '-' before {val!r}", line, col)
        coeff = 1
        exps = [0] * ring.nvars
        while True:
            if i >= len(toks):
                raise ParseError("dangling operator", line, col)
            kind, val, col = toks[i]
            if kind == "num":
                coeff = coeff * int(val) % p
                i += 1
            elif kind == "name":
                if val not in index:
                    raise ParseError(f"unknown variable {val!r}", line, col)
                e = 1
                i += 1
                if i < len(toks) and toks[i][1] == "^":
                    if i + 1 >= len(toks) or toks[i + 1][0] != "num":
                        raise ParseError("'^' must be followed by an integer", line, toks[i][2])
                    e = int(toks[i + 1][1])
                    i += 2
                exps[index[val]] += e
            else:
                raise ParseError(f"unexpected {val!r}", line, col)
            if i < len(toks) and toks[i][1] == "*":
                i += 1
                continue
            if i < len(toks) and toks[i][0] != "op":
                raise ParseError("implicit multiplication is not allowed; use '*'", line, toks[i][2])
            break
        m = tuple(exps)
        if any(e > MAX_EXPONENT for e in m):
            raise ParseError("exponent exceeds 16 bits", line, col)
        out[m] = (out.get(m, 0) + sign * coeff) % p
        sign = 1
        expect_term = False
    if expect_term:
        raise ParseError("dangling operator", line, toks[-1][2])
    return {m: c for m, c in out.items() if c}


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def homogeneous_degree(polys: Iterable[Polynomial]) -> list:
    return [f.degree() for f in polys]
