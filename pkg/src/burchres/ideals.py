"""Homogeneous ideals of a polynomial ring and the usual operations on them."""

from __future__ import annotations

import math
from functools import cached_property
from typing import Iterable, Sequence

from .algebra import AlgebraError, Polynomial, Ring, grevlex_key, mono_divides
from .groebner import (
    GroebnerBasis,
    InhomogeneousError,
    _from_vec,
    _to_vec,
    buchberger,
    divide_one_minus_t,
    eliminate,
    hilbert_numerator,
    poly_add_int,
)

INFINITE = math.inf


class Ideal:
    """Ideal given by homogeneous generators; equality compares Gröbner bases."""

    __slots__ = ("ring", "gens", "__dict__")

    def __init__(self, ring: Ring, gens: Iterable = ()):
        self.ring = ring
        out = []
        for g in gens:
            f = ring(g) if not isinstance(g, Polynomial) else g
            if f.ring != ring:
                raise AlgebraError("generator lives in a different ring")
            if not f.is_homogeneous():
                raise InhomogeneousError(f"inhomogeneous generator {f}")
            if not f.is_zero():
                out.append(f)
        self.gens = tuple(out)

    @cached_property
    def gb(self) -> GroebnerBasis:
        if not self.gens:
            return GroebnerBasis(self.ring, ())
        return buchberger(self.gens)

    @property
    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return self.gb.is_unit_ideal()

    def __contains__(self, f) -> bool:
        f = self.ring(f) if not isinstance(f, Polynomial) else f
        if f.is_zero():
            return True
        if not self.gens:
            return False
        if self.is_monomial and f.is_monomial():
            m = f.lead_monomial()
            return any(mono_divides(g.lead_monomial(), m) for g in self.gens)
        return self.gb.contains(f)

    def contains(self, other: "Ideal") -> bool:
        _same(self, other)
        return all(g in self for g in other.gens)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.gb.generators == other.gb.generators

    def __hash__(self):
        return hash((self.ring, self.gb.generators))

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return product(self, other)

    def __pow__(self, k: int) -> "Ideal":
        return power(self, k)

    def reduced(self) -> "Ideal":
        """Same ideal, generated by its reduced Gröbner basis."""
        return Ideal(self.ring, self.gb.generators)

    def mod(self, I: "Ideal") -> tuple:
        """Minimal generators of the image in ``S/I``, as normal forms."""
        J = mingens(ideal_sum(self, I))
        out = []
        for f in J:
            if f in I:
                continue
            g = I.gb.normal_form(f).monic() if I.gens else f.monic()
            # different preimages can share a normal form, or become redundant mod I
            if out and g in Ideal(self.ring, list(I.gens) + out):
                continue
            out.append(g)
        return tuple(out)

    def __str__(self):
        if not self.gens:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def __repr__(self):
        return f"Ideal{self}"


def _same(A: Ideal, B: Ideal) -> None:
    if A.ring != B.ring:
        raise AlgebraError("ring mismatch")


def maximal_ideal(ring: Ring) -> Ideal:
    return Ideal(ring, ring.gens())


def unit_ideal(ring: Ring) -> Ideal:
    return Ideal(ring, [ring.one()])


def ideal_sum(A: Ideal, B: Ideal) -> Ideal:
    _same(A, B)
    return Ideal(A.ring, A.gens + B.gens)


def product(A: Ideal, B: Ideal) -> Ideal:
    _same(A, B)
    return Ideal(A.ring, [a * b for a in A.gens for b in B.gens])


def power(A: Ideal, k: int) -> Ideal:
    if k < 0:
        raise AlgebraError("negative power")
    out = unit_ideal(A.ring)
    for _ in range(k):
        out = mingens_ideal(product(out, A))
    return out


def intersect(A: Ideal, B: Ideal) -> Ideal:
    _same(A, B)
    if A.is_zero() or B.is_zero():
        return Ideal(A.ring, ())
    if A.is_monomial and B.is_monomial:
        from .algebra import mono_lcm

        ms = {mono_lcm(a.lead_monomial(), b.lead_monomial()) for a in A.gens for b in B.gens}
        return Ideal(A.ring, [A.ring.monomial(m) for m in ms]).reduced()
    # (0, f) lies in the span of (a, a) and (b, 0) exactly when f is in both
    vecs = []
    for a in A.gb.generators:
        v = _to_vec(a, 0)
        v.update(_to_vec(a, 1))
        vecs.append(v)
    vecs.extend(_to_vec(b, 0) for b in B.gb.generators)
    kept = eliminate(A.ring, vecs, [0, 0], 1)
    return Ideal(A.ring, [_from_vec(A.ring, v, 1) for v in kept]).reduced()


def _colon_principal(A: Ideal, b: Polynomial) -> Ideal:
    ring = A.ring
    if b.is_zero() or b in A:
        return unit_ideal(ring)
    if A.is_zero():
        return Ideal(ring, ())
    if A.is_monomial and b.is_monomial():
        from .algebra import mono_div, mono_lcm

        m = b.lead_monomial()
        out = [ring.monomial(mono_div(mono_lcm(g.lead_monomial(), m), m)) for g in A.gens]
        return Ideal(ring, out).reduced()
    # (0, f) lies in the span of (b, 1) and (a, 0) exactly when f*b is in A
    v = _to_vec(b, 0)
    v[(1, tuple([0] * ring.nvars))] = 1
    vecs = [v] + [_to_vec(a, 0) for a in A.gb.generators]
    kept = eliminate(ring, vecs, [0, b.degree()], 1)
    return Ideal(ring, [_from_vec(ring, w, 1) for w in kept]).reduced()


def colon(A: Ideal, B: Ideal) -> Ideal:
    """``(A : B) = {f : f B ⊆ A}``."""
    _same(A, B)
    out = unit_ideal(A.ring)
    for b in mingens(B):
        out = intersect(out, _colon_principal(A, b))
    return out


def contains(A: Ideal, B: Ideal) -> bool:
    return A.contains(B)


def equals(A: Ideal, B: Ideal) -> bool:
    return A == B


def mingens(A: Ideal) -> tuple:
    """Minimal homogeneous generators, chosen by degree, then lead, then input order."""
    order = sorted(range(len(A.gens)),
                   key=lambda i: (A.gens[i].degree(), grevlex_key(A.gens[i].lead_monomial()), i))
    kept: list = []
    for i in order:
        f = A.gens[i]
        if kept and f in Ideal(A.ring, kept):
            continue
        kept.append(f)
    return tuple(kept)


def mingens_mod(N: Ideal, I: Ideal) -> tuple:
    """Elements of ``N`` whose images minimally generate ``(N + I)/I``."""
    _same(N, I)
    order = sorted(range(len(N.gens)),
                   key=lambda i: (N.gens[i].degree(), grevlex_key(N.gens[i].lead_monomial()), i))
    kept: list = []
    for i in order:
        f = N.gens[i]
        if f in Ideal(N.ring, list(I.gens) + kept):
            continue
        kept.append(f)
    return tuple(kept)


def mingens_ideal(A: Ideal) -> Ideal:
    return Ideal(A.ring, mingens(A))


def is_minimal_generator(A: Ideal, f) -> bool:
    """``f`` lies in ``A`` but not in ``nA``."""
    f = A.ring(f) if not isinstance(f, Polynomial) else f
    if f.is_zero() or not f.is_homogeneous() or f not in A:
        return False
    return f not in product(maximal_ideal(A.ring), A)


def hilbert_dim(A: Ideal, d: int) -> int:
    """``dim_k (S/A)_d``."""
    if d < 0:
        return 0
    from .algebra import monomials_of_degree

    leads = A.gb.lead_monomials
    return sum(1 for m in monomials_of_degree(A.ring.nvars, d)
               if not any(mono_divides(l, m) for l in leads))


def hilbert_numerator_of(A: Ideal) -> dict:
    return hilbert_numerator(A.gb.lead_monomials)


def colength(N: Ideal, Q: Ideal):
    """``dim_k N/Q`` for ``Q ⊆ N``; ``INFINITE`` when that is not finite."""
    _same(N, Q)
    if not N.contains(Q):
        raise AlgebraError("colength needs Q ⊆ N")
    diff = poly_add_int(hilbert_numerator_of(Q), hilbert_numerator_of(N), scale=-1)
    if not diff:
        return 0
    q = divide_one_minus_t(diff, N.ring.nvars)
    if q is None:
        return INFINITE
    return sum(q.values())


def is_depth_zero(I: Ideal) -> bool:
    if I.is_zero() or I.is_unit():
        raise AlgebraError("depth test needs a proper nonzero ideal")
    return colon(I, maximal_ideal(I.ring)) != I


def double_colon(I: Ideal, N: Ideal) -> Ideal:
    """``(I : (I : N))``, the largest J with ``(I : J) = (I : N)``."""
    return colon(I, colon(I, N))


def ideal(ring: Ring, gens: Sequence) -> Ideal:
    return Ideal(ring, gens)
