"""Buchberger's algorithm for homogeneous submodules of graded free modules.

A module vector is a dict ``{(position, exponents): coeff}``; an ideal is the
rank-one case.  The order is position-over-term (position 0 largest, grevlex
inside a position), which makes elimination of leading positions free:
basis elements whose lead sits in a position ``>= k`` have no terms in the
positions before ``k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .algebra import (
    AlgebraError,
    Polynomial,
    Ring,
    grevlex_key,
    inv_mod,
    mono_divides,
    mono_lcm,
)


class InhomogeneousError(AlgebraError):
    pass


def _tkey(t):
    return (-t[0], grevlex_key(t[1]))


def _lead(v: Mapping):
    return max(v, key=_tkey)


def _vec_degree(v: Mapping, twists: Sequence[int]) -> int:
    degs = {sum(m) + twists[pos] for pos, m in v}
    if len(degs) > 1:
        t = max(v, key=_tkey)
        raise InhomogeneousError(f"inhomogeneous vector (term at position {t[0]} with exponents {t[1]})")
    return degs.pop()


def _monic(v: dict, p: int) -> dict:
    inv = inv_mod(v[_lead(v)], p)
    return {t: c * inv % p for t, c in v.items()}


def _sub_multiple(f: dict, g: Mapping, mono, c: int, p: int) -> None:
    """In place ``f -= c * mono * g``."""
    for (pos, m), v in g.items():
        t = (pos, tuple(a + b for a, b in zip(m, mono)))
        w = (f.get(t, 0) - c * v) % p
        if w:
            f[t] = w
        else:
            f.pop(t, None)


class _Reducer:
    """Leads indexed by position for divisor lookup."""

    def __init__(self, p: int):
        self.p = p
        self.polys: list = []
        self.by_pos: dict = {}

    def add(self, v: dict) -> int:
        idx = len(self.polys)
        self.polys.append(v)
        pos, m = _lead(v)
        self.by_pos.setdefault(pos, []).append((m, idx))
        return idx

    def find(self, pos, m, active=None):
        for lm, idx in self.by_pos.get(pos, ()):
            if (active is None or idx in active) and mono_divides(lm, m):
                return idx
        return None

    def reduce(self, f: dict, active=None, full: bool = True) -> dict:
        p = self.p
        f = dict(f)
        rem: dict = {}
        while f:
            t = max(f, key=_tkey)
            pos, m = t
            idx = self.find(pos, m, active)
            if idx is None:
                if not full:
                    f.update(rem)
                    return f
                rem[t] = f.pop(t)
                continue
            g = self.polys[idx]
            gpos, gm = _lead(g)
            c = f[t] * inv_mod(g[(gpos, gm)], p) % p
            _sub_multiple(f, g, tuple(a - b for a, b in zip(m, gm)), c, p)
        return rem


@dataclass
class _Pair:
    i: int
    j: int
    pos: int
    lcm: tuple
    degree: int


def module_groebner(vectors: Iterable[Mapping], twists: Sequence[int], p: int,
                    rank_one: bool = False) -> list:
    """Reduced, monic Gröbner basis (list of vector dicts) of a homogeneous submodule."""
    twists = list(twists)
    gens = []
    for v in vectors:
        v = {t: c % p for t, c in v.items() if c % p}
        if v:
            _vec_degree(v, twists)
            gens.append(v)
    gens.sort(key=lambda v: (_vec_degree(v, twists), _tkey(_lead(v))))

    red = _Reducer(p)
    active: set = set()
    pairs: list = []
    leads: list = []
    degs: list = []

    def update(h: int) -> None:
        hpos, hm = leads[h]
        new = []
        for g in sorted(active):
            gpos, gm = leads[g]
            if gpos != hpos:
                continue
            new.append(g)
        C = [(g, mono_lcm(hm, leads[g][1])) for g in new]
        D = []
        for idx, (g1, l1) in enumerate(C):
            disjoint = rank_one and all(a == 0 or b == 0 for a, b in zip(hm, leads[g1][1]))
            if disjoint:
                D.append((g1, l1, True))
                continue
            dominated = any(mono_divides(l2, l1) for k, (g2, l2) in enumerate(C) if k > idx)
            dominated = dominated or any(mono_divides(l2, l1) for (g2, l2, _) in D)
            if not dominated:
                D.append((g1, l1, False))
        E = [(g, l) for g, l, disj in D if not disj]
        kept = []
        for pr in pairs:
            if pr.pos == hpos and mono_divides(hm, pr.lcm):
                l1 = mono_lcm(leads[pr.i][1], hm)
                l2 = mono_lcm(leads[pr.j][1], hm)
                if l1 != pr.lcm and l2 != pr.lcm:
                    continue
            kept.append(pr)
        pairs[:] = kept
        for g, l in E:
            pairs.append(_Pair(g, h, hpos, l, sum(l) + twists[hpos]))
        for g in list(active):
            gpos, gm = leads[g]
            if gpos == hpos and mono_divides(hm, gm):
                active.discard(g)
        active.add(h)

    def insert(v: dict) -> None:
        v = _monic(v, p)
        h = red.add(v)
        leads.append(_lead(v))
        degs.append(_vec_degree(v, twists))
        update(h)

    gi = 0
    while gi < len(gens) or pairs:
        next_gen_deg = _vec_degree(gens[gi], twists) if gi < len(gens) else None
        next_pair_deg = min((pr.degree for pr in pairs), default=None)
        if next_gen_deg is not None and (next_pair_deg is None or next_gen_deg <= next_pair_deg):
            f = red.reduce(gens[gi], active, full=False)
            gi += 1
        else:
            k = min(range(len(pairs)), key=lambda q: (pairs[q].degree, _tkey((pairs[q].pos, pairs[q].lcm)), pairs[q].i, pairs[q].j))
            pr = pairs.pop(k)
            f = _spoly(red.polys[pr.i], red.polys[pr.j], leads[pr.i], leads[pr.j], pr.lcm, p)
            f = red.reduce(f, active, full=False)
        if f:
            insert(f)

    # interreduce into the reduced basis
    basis = [red.polys[i] for i in sorted(active, key=lambda i: _tkey(leads[i]), reverse=True)]
    out = []
    for k, v in enumerate(basis):
        others = _Reducer(p)
        for j, w in enumerate(basis):
            if j != k:
                others.add(w)
        lt = _lead(v)
        tail = {t: c for t, c in v.items() if t != lt}
        tail = others.reduce(tail)
        tail[lt] = v[lt]
        out.append(_monic(tail, p))
    return out


def _spoly(f, g, lf, lg, lcm, p):
    mf = tuple(a - b for a, b in zip(lcm, lf[1]))
    mg = tuple(a - b for a, b in zip(lcm, lg[1]))
    h: dict = {}
    _sub_multiple(h, f, mf, p - inv_mod(f[lf], p), p)
    _sub_multiple(h, g, mg, inv_mod(g[lg], p), p)
    return h


# -- ideal-level API -----------------------------------------------------------

def _to_vec(f: Polynomial, pos: int = 0) -> dict:
    return {(pos, m): c for m, c in f.data.items()}


def _from_vec(ring: Ring, v: Mapping, pos: int = 0) -> Polynomial:
    return Polynomial._raw(ring, {m: c for (q, m), c in v.items() if q == pos})


class GroebnerBasis:
    """Reduced monic grevlex Gröbner basis of a homogeneous ideal."""

    def __init__(self, ring: Ring, generators: Sequence[Polynomial]):
        self.ring = ring
        self.generators = tuple(generators)
        self._red = _Reducer(ring.prime)
        for g in self.generators:
            self._red.add(_to_vec(g))

    @property
    def lead_monomials(self) -> tuple:
        return tuple(g.lead_monomial() for g in self.generators)

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.is_zero() or not self.generators:
            return f
        return _from_vec(self.ring, self._red.reduce(_to_vec(f)))

    def normal_form_dict(self, d: Mapping) -> dict:
        if not d or not self.generators:
            return dict(d)
        r = self._red.reduce({(0, m): c for m, c in d.items()})
        return {m: c for (_, m), c in r.items()}

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def is_unit_ideal(self) -> bool:
        return any(sum(m) == 0 for m in self.lead_monomials)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __eq__(self, other):
        return isinstance(other, GroebnerBasis) and self.ring == other.ring and set(self.generators) == set(other.generators)

    def __hash__(self):
        return hash((self.ring, frozenset(self.generators)))

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(map(str, self.generators))}])"


def buchberger(gens: Sequence[Polynomial]) -> GroebnerBasis:
    gens = list(gens)
    if not gens:
        raise AlgebraError("buchberger needs at least one generator")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise AlgebraError("generators live in different rings")
        if not g.is_homogeneous():
            raise InhomogeneousError(f"inhomogeneous generator {g}")
    vecs = module_groebner((_to_vec(g) for g in gens), [0], ring.prime, rank_one=True)
    polys = [_from_vec(ring, v) for v in vecs]
    polys.sort(key=lambda f: grevlex_key(f.lead_monomial()))
    return GroebnerBasis(ring, polys)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(f)


# -- module GB wrapper ----------------------------------------------------------

@dataclass
class ModuleGB:
    """Gröbner basis of a submodule of ``⊕ S(-twists[k])``."""

    ring: Ring
    twists: tuple
    vectors: list = field(default_factory=list)

    def __post_init__(self):
        self._red = _Reducer(self.ring.prime)
        for v in self.vectors:
            self._red.add(v)

    def reduce(self, v: Mapping) -> dict:
        return self._red.reduce(v)

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def lead_ideals(self) -> list:
        """Per position, the minimal monomial generators of the lead module."""
        out = [[] for _ in self.twists]
        for v in self.vectors:
            pos, m = _lead(v)
            out[pos].append(m)
        return [minimalize_monomials(ms) for ms in out]


def module_gb(ring: Ring, columns: Sequence[Mapping], twists: Sequence[int],
              quotient: GroebnerBasis | None = None) -> ModuleGB:
    """GB of the span of ``columns`` (+ ``quotient`` times every basis vector)."""
    vecs = [dict(c) for c in columns]
    if quotient is not None:
        for pos in range(len(twists)):
            for g in quotient.generators:
                vecs.append(_to_vec(g, pos))
    basis = module_groebner(vecs, twists, ring.prime, rank_one=len(twists) == 1)
    return ModuleGB(ring, tuple(twists), basis)


def eliminate(ring: Ring, vectors: Sequence[Mapping], twists: Sequence[int], keep_from: int) -> list:
    """Basis elements with no terms in positions ``< keep_from``."""
    basis = module_groebner(vectors, twists, ring.prime, rank_one=len(twists) == 1)
    return [v for v in basis if _lead(v)[0] >= keep_from]


# -- Hilbert series of monomial ideals --------------------------------------------

def minimalize_monomials(ms: Iterable[tuple]) -> list:
    ms = sorted(set(ms), key=lambda m: (sum(m), m))
    out = []
    for m in ms:
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return out


def poly_add_int(a: dict, b: Mapping, scale: int = 1, shift: int = 0) -> dict:
    out = dict(a)
    for k, v in b.items():
        kk = k + shift
        w = out.get(kk, 0) + scale * v
        if w:
            out[kk] = w
        else:
            out.pop(kk, None)
    return out


@lru_cache(maxsize=200_000)
def _hilbert_num(gens: tuple) -> tuple:
    # gens: minimal, sorted tuple of monomials
    if not gens:
        return ((0, 1),)
    n = len(gens[0])
    # pairwise coprime generators: product of (1 - t^deg)
    support = [0] * n
    for g in gens:
        for i, e in enumerate(g):
            if e:
                support[i] += 1
    if all(s <= 1 for s in support):
        num = {0: 1}
        for g in gens:
            num = poly_add_int(num, num, scale=-1, shift=sum(g))
        return tuple(sorted(num.items()))
    # pivot on the most frequent variable
    i = max(range(n), key=lambda k: (support[k], -k))
    e = min(g[i] for g in gens if g[i])
    piv = tuple(e if k == i else 0 for k in range(n))
    plus = tuple(minimalize_monomials(list(gens) + [piv]))
    colon = tuple(minimalize_monomials(tuple(max(a - b, 0) for a, b in zip(g, piv)) for g in gens))
    num = dict(_hilbert_num(plus))
    num = poly_add_int(num, dict(_hilbert_num(colon)), shift=e)
    return tuple(sorted(num.items()))


def hilbert_numerator(monomials: Iterable[tuple]) -> dict:
    """Numerator K(t) with ``H_{S/J}(t) = K(t)/(1-t)^n`` for a monomial ideal J."""
    gens = tuple(minimalize_monomials(monomials))
    return dict(_hilbert_num(gens))


def series_coefficients(num: Mapping, nvars: int, upto: int) -> list:
    """First ``upto + 1`` coefficients of ``num(t)/(1-t)^nvars``."""
    from math import comb

    out = []
    for d in range(upto + 1):
        s = 0
        for k, c in num.items():
            if d - k >= 0:
                s += c * comb(d - k + nvars - 1, nvars - 1)
        out.append(s)
    return out


def divide_one_minus_t(num: Mapping, times: int):
    """Exact division of ``num`` by ``(1-t)**times``; ``None`` if not divisible."""
    poly = dict(num)
    for _ in range(times):
        if not poly:
            return {}
        if sum(poly.values()) != 0:
            return None
        lo, hi = min(poly), max(poly)
        q = {}
        acc = 0
        for k in range(lo, hi):
            acc += poly.get(k, 0)
            if acc:
                q[k] = acc
        poly = q
    return poly


# -- syzygies (implemented on top of the graded linear-algebra engine) ----------

def syzygies(M):
    """Generators of the kernel of a homogeneous matrix over the polynomial ring."""
    from .graded import syzygies as _syz

    return _syz(M)


def syzygies_mod(I, M):
    """Generators of the kernel of ``M`` over ``S/I``."""
    from .graded import syzygies_mod as _syzm

    return _syzm(I, M)
