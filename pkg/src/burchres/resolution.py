"""Minimal graded free resolutions over ``R = S/I``."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .algebra import AlgebraError, Ring, grevlex_key
from .graded import (
    RANK_CAP,
    GradedFreeModule,
    GradedMatrix,
    QuotientRing,
    ResourceCapError,
    fine_setup,
    graded_kernel,
    image_numerator,
    kernel_matrix,
)
from .groebner import _to_vec, module_gb
from .ideals import Ideal, ideal_sum, mingens_mod

IDEAL = "IDEAL"
COKERNEL = "COKERNEL"
DEFAULT_DEGREE_BOUND = 6


@dataclass
class PresentedModule:
    """Either an ideal of ``R`` or the cokernel of a homogeneous matrix."""

    kind: str
    ideal: Ideal | None = None
    matrix: GradedMatrix | None = None

    @classmethod
    def of_ideal(cls, N: Ideal) -> "PresentedModule":
        return cls(IDEAL, ideal=N)

    @classmethod
    def cokernel(cls, A: GradedMatrix) -> "PresentedModule":
        return cls(COKERNEL, matrix=A)

    @classmethod
    def quotient(cls, N: Ideal) -> "PresentedModule":
        """``R/N``, presented by the row of generators of ``N``."""
        ring = N.ring
        gens = list(N.gens)
        A = GradedMatrix(ring, GradedFreeModule([0]), GradedFreeModule([g.degree() for g in gens]), [gens])
        return cls(COKERNEL, matrix=A)

    @classmethod
    def free(cls, ring: Ring, twists=(0,)) -> "PresentedModule":
        A = GradedMatrix(ring, GradedFreeModule(twists), GradedFreeModule(()), [[] for _ in twists])
        return cls(COKERNEL, matrix=A)

    def describe(self) -> str:
        if self.kind == IDEAL:
            return f"ideal {self.ideal}"
        return f"cokernel of a {self.matrix.nrows}x{self.matrix.ncols} matrix"


def _vec_of_column(A: GradedMatrix, c: int) -> dict:
    v = {}
    for r, f in A.cols[c].items():
        v.update(_to_vec(f, r))
    return v


def prune(A: GradedMatrix, Q: QuotientRing) -> GradedMatrix:
    """Minimal presentation of ``coker A`` over ``Q``.

    Unit entries are pivoted away in row-major order; then columns lying in
    the span of earlier ones (by degree) are dropped.
    """
    ring = A.ring
    p = ring.prime
    rows = [[Q.reduce(f) for f in row] for row in A.rows]
    tgt = list(A.target.twists)
    src = list(A.source.twists)
    while True:
        hit = None
        for r in range(len(rows)):
            for c in range(len(src)):
                f = rows[r][c]
                if f and tgt[r] == src[c]:
                    hit = (r, c)
                    break
            if hit:
                break
        if hit is None:
            break
        r, c = hit
        u = rows[r][c].lead_coefficient()
        uinv = pow(u, p - 2, p)
        for c2 in range(len(src)):
            if c2 == c or not rows[r][c2]:
                continue
            factor = rows[r][c2] * ring.constant(uinv)
            for r2 in range(len(rows)):
                if rows[r2][c]:
                    rows[r2][c2] = Q.reduce(rows[r2][c2] - factor * rows[r2][c])
        del rows[r]
        del tgt[r]
        for row in rows:
            del row[c]
        del src[c]
    B = GradedMatrix(ring, GradedFreeModule(tgt), GradedFreeModule(src), rows, check=False)
    order = sorted(range(B.ncols), key=lambda c: (src[c], c))
    kept: list = []
    for c in order:
        v = _vec_of_column(B, c)
        if not v:
            continue
        if kept:
            gb = module_gb(ring, [_vec_of_column(B, k) for k in kept], tgt, quotient=Q.gb)
            if gb.contains(v):
                continue
        kept.append(c)
    kept.sort()
    rows = [[B.rows[r][c] for c in kept] for r in range(B.nrows)]
    return GradedMatrix(ring, GradedFreeModule(tgt), GradedFreeModule([src[c] for c in kept]), rows, check=False)


def ideal_of(ring: Ring, polys, I: Ideal | None = None) -> Ideal:
    """Ideal generated by ``polys`` (plus ``I``), skipping redundant elements early."""
    distinct = sorted({f.monic() for f in polys if f},
                      key=lambda f: (f.degree(), grevlex_key(f.lead_monomial()), str(f)))
    kept = list(I.gens) if I is not None else []
    cur = Ideal(ring, kept)
    for f in distinct:
        if f not in cur:
            kept.append(f)
            cur = Ideal(ring, kept)
    return cur


def entry_ideal(A: GradedMatrix, I: Ideal | None = None) -> Ideal:
    """Ideal of all entries; with ``I`` given, its preimage in the polynomial ring."""
    return ideal_of(A.ring, A.nonzero_entries(), I)


def column_ideal(A: GradedMatrix, c: int, I: Ideal | None = None) -> Ideal:
    return ideal_of(A.ring, A.column(c), I)


@dataclass
class Resolution:
    """Matrices ``A_start, A_start+1, ...`` of a minimal resolution."""

    ring: Ring
    I: Ideal
    module: PresentedModule
    start: int
    matrices: list = field(default_factory=list)
    minimal: list = field(default_factory=list)
    complete: bool = False   # a zero module was reached, so later matrices vanish

    @property
    def last(self) -> int:
        return self.start + len(self.matrices) - 1

    def A(self, j: int) -> GradedMatrix:
        if j < self.start:
            raise IndexError(f"no matrix A_{j}")
        if j > self.last:
            if self.complete:
                return GradedMatrix(self.ring, GradedFreeModule(()), GradedFreeModule(()), [], check=False)
            raise IndexError(f"A_{j} was not computed")
        return self.matrices[j - self.start]

    def indices(self) -> range:
        return range(self.start, self.last + 1)

    def entry_ideal(self, j: int) -> Ideal:
        return entry_ideal(self.A(j), self.I)

    def column_ideal(self, j: int, c: int) -> Ideal:
        return column_ideal(self.A(j), c, self.I)

    def ranks(self) -> list:
        """Betti numbers ``b_0, b_1, ...`` of the module."""
        if self.start == 0:
            return [A.ncols for A in self.matrices]
        out = [self.matrices[0].nrows] if self.matrices else []
        out += [A.ncols for A in self.matrices]
        return out

    def twists(self) -> list:
        if self.start == 0:
            return [list(A.source.twists) for A in self.matrices]
        out = [list(self.matrices[0].target.twists)] if self.matrices else []
        out += [list(A.source.twists) for A in self.matrices]
        return out

    def to_json(self) -> dict:
        return {
            "ring": {"prime": self.ring.prime, "vars": list(self.ring.names)},
            "ideal": [str(g) for g in self.I.gens],
            "module": self.module.describe(),
            "start": self.start,
            "matrices": [A.to_json() for A in self.matrices],
            "minimal": list(self.minimal),
            "complete": self.complete,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _first_matrix(I: Ideal, M: PresentedModule, Q: QuotientRing) -> tuple:
    ring = I.ring
    if M.kind == IDEAL:
        N = M.ideal
        if N.ring != ring:
            raise AlgebraError("module lives in a different ring")
        gens = list(mingens_mod(N, I))
        gens = [Q.reduce(f) for f in gens]
        A = GradedMatrix(ring, GradedFreeModule([0]), GradedFreeModule([g.degree() for g in gens]), [gens], check=False)
        return 0, A
    A = M.matrix
    if A.ring != ring:
        raise AlgebraError("module lives in a different ring")
    # homogeneity is checked by the constructor; re-run it for safety
    GradedMatrix(ring, A.target, A.source, check=True, cols=A.cols)
    return 1, prune(A, Q)


def resolve(I: Ideal, M: PresentedModule, steps: int = 10, rank_cap: int = RANK_CAP,
            degree_bound: int = DEFAULT_DEGREE_BOUND) -> Resolution:
    """Minimal resolution of ``M`` over ``S/I`` through ``A_steps``."""
    if steps < 1:
        raise ValueError("steps must be at least 1")
    ring = I.ring
    if I.is_unit():
        raise AlgebraError("the quotient ring is zero")
    Q = QuotientRing(ring, I.gb if I.gens else None)
    start, A = _first_matrix(I, M, Q)
    res = Resolution(ring, I, M, start, [A], [True])
    G, ft, fs = fine_setup(ring, list(I.gens), A)
    target = image_numerator(Q, A)
    while res.last < steps:
        if A.ncols == 0:
            res.complete = True
            break
        limit = (max(A.source.twists) if A.ncols else 0) + degree_bound + max(1, max((g.degree() for g in I.gens), default=1))
        kr = graded_kernel(Q, G, A, fs, ft, target, rank_cap=rank_cap, degree_limit=limit)
        B = kernel_matrix(ring, A.source, kr)
        res.matrices.append(B)
        res.minimal.append(True)
        ft, fs = fs, list(kr.fine_degrees)
        target = kr.numerator
        A = B
    if A.ncols == 0:
        res.complete = True
    return res


def betti(res: Resolution) -> dict:
    return {"ranks": res.ranks(), "twists": res.twists()}


# -- Tor via graded pieces ------------------------------------------------------------

def _piece_rank(A: GradedMatrix, Q: QuotientRing, d: int) -> int:
    p = A.ring.prime
    cols = [(c, m) for c in range(A.ncols) for m in Q.std_monos(d - A.source.twists[c])]
    if not cols:
        return 0
    rowidx: dict = {}
    trip = []
    for j, (c, m) in enumerate(cols):
        for r, f in A.cols[c].items():
            for t, coef in f.data.items():
                tm = tuple(a + b for a, b in zip(t, m))
                for m2, c2 in Q.nf_mono(tm):
                    i = rowidx.setdefault((r, m2), len(rowidx))
                    trip.append((i, j, coef * c2))
    if not rowidx:
        return 0
    M = np.zeros((len(rowidx), len(cols)), dtype=np.int64)
    for i, j, v in trip:
        M[i, j] = (M[i, j] + v) % p
    return _kernels.rank(M, p)


def _free_dim(twists, Q: QuotientRing, d: int) -> int:
    return sum(len(Q.std_monos(d - t)) for t in twists)


def tor_dims(res: Resolution, Qideal: Ideal, j_max: int) -> list:
    """``dim_k Tor_j(M, R/Q)`` for ``0 <= j <= j_max``; needs ``R/Q`` of finite length."""
    ring = res.ring
    J = ideal_sum(res.I, Qideal)
    Qr = QuotientRing(ring, J.gb)
    top = None
    for d in range(0, 200):
        if not Qr.std_monos(d):
            top = d - 1
            break
    if top is None:
        raise ResourceCapError("R/Q does not have finite length within degree 200")
    # F_j -> F_{j-1} is A_j in both conventions; A_0 of an ideal is the augmentation
    twists = res.twists()
    out = []
    for j in range(j_max + 1):
        if j >= len(twists):
            if res.complete:
                out.append(0)
                continue
            raise ResourceCapError(f"resolution prefix too short for Tor_{j}")
        tw = twists[j]
        if not tw:
            out.append(0)
            continue
        if j + 1 > res.last and not res.complete:
            raise ResourceCapError(f"resolution prefix too short for Tor_{j}")
        dj = res.A(j) if j >= 1 else None
        dj1 = res.A(j + 1)
        total = 0
        for d in range(min(tw), max(tw) + top + 1):
            dim = _free_dim(tw, Qr, d)
            if not dim:
                continue
            r_out = _piece_rank(dj, Qr, d) if dj is not None else 0
            r_in = _piece_rank(dj1, Qr, d)
            total += dim - r_out - r_in
        out.append(total)
    return out
