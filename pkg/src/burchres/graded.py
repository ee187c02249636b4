"""Graded free modules, homogeneous matrices and kernels over ``R = S/I``.

Kernels are computed one graded piece at a time by linear algebra over
GF(p).  Pieces are indexed by the finest grading that keeps every input
homogeneous (the full ``Z^n`` grading for monomial data), which keeps the
matrices small.  The sweep over degrees stops once the leading terms found
so far account for the whole Hilbert series of the kernel, which is known
in advance from the image; so the result is exact, not degree-truncated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import _kernels
from .algebra import (
    AlgebraError,
    Polynomial,
    Ring,
    grevlex_key,
    monomials_of_degree,
    mono_divides,
)
from .groebner import (
    GroebnerBasis,
    _hilbert_num,
    buchberger,
    hilbert_numerator,
    minimalize_monomials,
    module_gb,
    poly_add_int,
)

RANK_CAP = 4096
DEGREE_SLACK = 64


class ResourceCapError(RuntimeError):
    """A step exceeded the rank guard or the degree sweep limit."""


# -- free modules and matrices ----------------------------------------------------

@dataclass(frozen=True)
class GradedFreeModule:
    twists: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(int(t) for t in self.twists))

    @property
    def rank(self) -> int:
        return len(self.twists)


class GradedMatrix:
    """Homogeneous matrix ``source -> target``; entry (r, c) has degree ``src[c] - tgt[r]``.

    Stored column-wise and sparse: ``cols[c]`` maps row index to a nonzero entry.
    """

    def __init__(self, ring: Ring, target: GradedFreeModule, source: GradedFreeModule,
                 rows: Sequence[Sequence[Polynomial]] | None = None, check: bool = True,
                 cols: Sequence[Mapping] | None = None):
        self.ring = ring
        self.target = target
        self.source = source
        if cols is None:
            rows = [tuple(r) for r in (rows or [])]
            if len(rows) != target.rank:
                raise AlgebraError("row count does not match the target rank")
            for row in rows:
                if len(row) != source.rank:
                    raise AlgebraError("column count does not match the source rank")
            cols = [{r: rows[r][c] for r in range(len(rows)) if rows[r][c]} for c in range(source.rank)]
        else:
            cols = [{r: f for r, f in col.items() if f} for col in cols]
            if len(cols) != source.rank:
                raise AlgebraError("column count does not match the source rank")
        self.cols = cols
        self.fine = None  # (grading, fine target twists, fine source twists) when known
        if check:
            for c, col in enumerate(self.cols):
                for r, f in col.items():
                    if not 0 <= r < target.rank:
                        raise AlgebraError(f"row index {r} out of range")
                    want = source.twists[c] - target.twists[r]
                    if not f.is_homogeneous() or f.degree() != want:
                        raise AlgebraError(
                            f"entry ({r},{c}) = {f} is not homogeneous of degree {want}")

    @classmethod
    def from_rows(cls, ring: Ring, rows, target_twists=None) -> "GradedMatrix":
        """Build a matrix, inferring twists so that it is homogeneous."""
        rows = [[ring(e) for e in row] for row in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != ncols:
                raise AlgebraError("ragged matrix")
            for f in row:
                if not f.is_homogeneous():
                    raise AlgebraError(f"inhomogeneous entry {f}")
        tgt = [None] * nrows
        src = [None] * ncols
        if target_twists is not None:
            tgt = list(target_twists)
        # propagate along nonzero entries
        changed = True
        while changed:
            changed = False
            for r in range(nrows):
                for c in range(ncols):
                    f = rows[r][c]
                    if f.is_zero():
                        continue
                    d = f.degree()
                    if tgt[r] is not None and src[c] is None:
                        src[c] = tgt[r] + d
                        changed = True
                    elif src[c] is not None and tgt[r] is None:
                        tgt[r] = src[c] - d
                        changed = True
                    elif src[c] is not None and tgt[r] is not None and src[c] != tgt[r] + d:
                        raise AlgebraError(f"matrix is not homogeneous at entry ({r},{c})")
            if not changed:
                for r in range(nrows):
                    if tgt[r] is None:
                        tgt[r] = 0
                        changed = True
                        break
        lo = min(tgt) if tgt else 0
        if target_twists is None and lo != 0:
            tgt = [t - lo for t in tgt]
            src = [None if s is None else s - lo for s in src]
        src = [0 if s is None else s for s in src]
        return cls(ring, GradedFreeModule(tgt), GradedFreeModule(src), rows)

    @property
    def nrows(self) -> int:
        return self.target.rank

    @property
    def ncols(self) -> int:
        return self.source.rank

    @property
    def rows(self) -> tuple:
        """Dense view; avoid on large matrices."""
        zero = self.ring.zero()
        return tuple(tuple(self.cols[c].get(r, zero) for c in range(self.ncols)) for r in range(self.nrows))

    def entry(self, r: int, c: int) -> Polynomial:
        return self.cols[c].get(r, self.ring.zero())

    def column(self, c: int) -> tuple:
        if not 0 <= c < self.ncols:
            raise IndexError(f"column {c} out of range")
        zero = self.ring.zero()
        col = self.cols[c]
        return tuple(col.get(r, zero) for r in range(self.nrows))

    def columns(self) -> list:
        return [self.column(c) for c in range(self.ncols)]

    def nonzero_entries(self) -> list:
        return [f for col in self.cols for _, f in sorted(col.items())]

    def is_zero(self) -> bool:
        return not any(self.cols)

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.ncols != other.nrows:
            raise AlgebraError("shape mismatch")
        out = []
        for col in other.cols:
            acc: dict = {}
            for k, b in col.items():
                for r, a in self.cols[k].items():
                    acc[r] = acc[r] + a * b if r in acc else a * b
            out.append(acc)
        return GradedMatrix(self.ring, self.target, other.source, check=False, cols=out)

    def to_json(self) -> dict:
        return {
            "target_twists": list(self.target.twists),
            "source_twists": list(self.source.twists),
            "shape": [self.nrows, self.ncols],
            "entries": [[r, c, str(f)] for c, col in enumerate(self.cols) for r, f in sorted(col.items())],
        }

    def __repr__(self):
        return f"GradedMatrix({self.nrows}x{self.ncols})"


# -- quotient rings and fine gradings ---------------------------------------------------

class QuotientRing:
    """Standard monomials and monomial normal forms of ``S/I``."""

    def __init__(self, ring: Ring, gb: GroebnerBasis | None = None):
        self.ring = ring
        self.gb = gb
        self.leads = tuple(gb.lead_monomials) if gb is not None else ()
        self.monomial_ideal = gb is None or all(g.is_monomial() for g in gb.generators)
        self._std: dict = {}
        self._nf: dict = {}

    @classmethod
    def of(cls, ring: Ring, gens: Sequence[Polynomial]) -> "QuotientRing":
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            return cls(ring, None)
        return cls(ring, buchberger(gens))

    def is_standard(self, m) -> bool:
        return not any(mono_divides(l, m) for l in self.leads)

    def std_monos(self, d: int) -> tuple:
        out = self._std.get(d)
        if out is None:
            if d < 0:
                out = ()
            else:
                out = tuple(m for m in monomials_of_degree(self.ring.nvars, d) if self.is_standard(m))
            self._std[d] = out
        return out

    def nf_mono(self, m) -> tuple:
        """Normal form of a monomial as ``((std_mono, coeff), ...)``."""
        out = self._nf.get(m)
        if out is None:
            if self.is_standard(m):
                out = ((m, 1),)
            elif self.monomial_ideal:
                out = ()
            else:
                out = tuple(self.gb.normal_form_dict({m: 1}).items())
            self._nf[m] = out
        return out

    def nf_dict(self, d: Mapping) -> dict:
        p = self.ring.prime
        out: dict = {}
        for m, c in d.items():
            for m2, c2 in self.nf_mono(m):
                out[m2] = (out.get(m2, 0) + c * c2) % p
        return {m: c for m, c in out.items() if c}

    def reduce(self, f: Polynomial) -> Polynomial:
        if self.gb is None:
            return f
        return Polynomial._raw(self.ring, self.nf_dict(f.data))

    def hilbert_numerator(self) -> dict:
        return hilbert_numerator(self.leads)


class Grading:
    """Linear map ``Z^n -> Z^r``; row 0 is the total degree."""

    def __init__(self, weights: Sequence[Sequence[int]]):
        self.weights = tuple(tuple(int(w) for w in row) for row in weights)
        self._cache: dict = {}
        self.var_degrees = tuple(tuple(row[i] for row in self.weights) for i in range(len(self.weights[0])))

    def deg(self, m) -> tuple:
        out = self._cache.get(m)
        if out is None:
            out = tuple(sum(w * e for w, e in zip(row, m)) for row in self.weights)
            self._cache[m] = out
        return out

    @classmethod
    def orthogonal_to(cls, n: int, vectors: Sequence[Sequence[int]]) -> "Grading":
        vectors = [list(v) for v in vectors if any(v)]
        rows = [[1] * n]
        if not vectors:
            rows += [[int(i == j) for j in range(n)] for i in range(n)]
            return cls(rows)
        import sympy

        basis = sympy.Matrix(vectors).nullspace()
        for b in basis:
            den = sympy.ilcm(*[sympy.fraction(x)[1] for x in b]) if len(b) else 1
            rows.append([int(x * den) for x in b])
        return cls(rows)


def _internal_differences(polys) -> list:
    out = []
    for f in polys:
        ms = list(f.data) if isinstance(f, Polynomial) else list(f)
        for m in ms[1:]:
            out.append([a - b for a, b in zip(m, ms[0])])
    return out


def fine_setup(ring: Ring, ideal_gens: Sequence[Polynomial], A: GradedMatrix):
    """Finest grading making ``I`` and ``A`` homogeneous, plus fine twists for ``A``."""
    n = ring.nvars
    lattice = _internal_differences(list(ideal_gens) + A.nonzero_entries())
    row_adj = [[] for _ in range(A.nrows)]
    for c, col in enumerate(A.cols):
        for r, f in col.items():
            row_adj[r].append((c, f))
    while True:
        G = Grading.orthogonal_to(n, lattice)
        tgt = [None] * A.nrows
        src = [None] * A.ncols
        bad = None

        def anchor(t):
            return tuple([t] + [0] * (n - 1))

        for start in range(A.nrows + A.ncols):
            is_row = start < A.nrows
            idx = start if is_row else start - A.nrows
            if (tgt if is_row else src)[idx] is not None:
                continue
            if is_row:
                tgt[idx] = anchor(A.target.twists[idx])
            else:
                src[idx] = anchor(A.source.twists[idx])
            stack = [(is_row, idx)]
            while stack and bad is None:
                row_side, i = stack.pop()
                if row_side:
                    for c, f in row_adj[i]:
                        m = next(iter(f.data))
                        want = tuple(a + b for a, b in zip(tgt[i], m))
                        if src[c] is None:
                            src[c] = want
                            stack.append((False, c))
                        elif G.deg(src[c]) != G.deg(want):
                            bad = [a - b for a, b in zip(src[c], want)]
                            break
                else:
                    for r, f in A.cols[i].items():
                        m = next(iter(f.data))
                        want = tuple(a - b for a, b in zip(src[i], m))
                        if tgt[r] is None:
                            tgt[r] = want
                            stack.append((True, r))
                        elif G.deg(tgt[r]) != G.deg(want):
                            bad = [a - b for a, b in zip(tgt[r], want)]
                            break
            if bad is not None:
                break
        if bad is None:
            return G, [G.deg(t) for t in tgt], [G.deg(s) for s in src]
        lattice.append(bad)


# -- the kernel engine ------------------------------------------------------------

def _shift(num: Mapping, k: int) -> dict:
    return {d + k: c for d, c in num.items()}


def _num_sum(nums) -> dict:
    out: dict = {}
    for num in nums:
        out = poly_add_int(out, num)
    return out


def free_numerator(Q: QuotientRing, twists: Sequence[int]) -> dict:
    base = Q.hilbert_numerator()
    return _num_sum(_shift(base, t) for t in twists)


def image_numerator(Q: QuotientRing, A: GradedMatrix) -> dict:
    """Hilbert numerator of the image of ``A`` over ``S/I`` via a module Gröbner basis."""
    cols = []
    for col in A.cols:
        v = {}
        for r, f in col.items():
            for m, coef in f.data.items():
                v[(r, m)] = coef
        if v:
            cols.append(v)
    gb = module_gb(A.ring, cols, A.target.twists, quotient=Q.gb)
    coker = _num_sum(_shift(hilbert_numerator(list(J) + list(Q.leads)), t)
                     for J, t in zip(gb.lead_ideals(), A.target.twists))
    return poly_add_int(free_numerator(Q, A.target.twists), coker, scale=-1)


@dataclass
class KernelResult:
    """Minimal generators of a kernel plus its Hilbert numerator."""

    columns: list               # per generator: {position: {mono: coeff}}
    fine_degrees: list          # per generator: fine degree tuple
    numerator: dict             # Hilbert numerator of the kernel
    lead_ideals: list = field(default_factory=list)
    top_degree: int = 0


def graded_kernel(Q: QuotientRing, G: Grading, A: GradedMatrix, fine_src, fine_tgt,
                  image_num: Mapping, rank_cap: int = RANK_CAP,
                  degree_limit: int | None = None) -> KernelResult:
    """Minimal homogeneous generators of ``ker(A)`` over ``Q``."""
    p = A.ring.prime
    n = A.ring.nvars
    a = A.ncols
    src_tot = A.source.twists
    cols_entries = [[(r, tuple(f.data.items())) for r, f in sorted(col.items())] for col in A.cols]

    base_leads = tuple(Q.leads)
    base_num = dict(_hilbert_num(tuple(minimalize_monomials(base_leads))))
    leads = [[] for _ in range(a)]
    pos_num = [base_num] * a
    total = _num_sum(_shift(base_num, t) for t in src_tot)
    image_num = {k: v for k, v in image_num.items() if v}

    gens_cols: list = []
    gens_fine: list = []
    if a == 0 or total == image_num:
        return KernelResult([], [], _kernel_numerator(Q, src_tot, total), leads, 0)

    var_deg = G.var_degrees
    unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    d = min(src_tot)
    limit = degree_limit if degree_limit is not None else max(src_tot) + DEGREE_SLACK
    prev: dict = {}
    while True:
        if d > limit:
            raise ResourceCapError(f"kernel degree sweep exceeded degree {limit}")
        pieces: dict = {}
        for k in range(a):
            e = d - src_tot[k]
            if e < 0:
                continue
            fk = fine_src[k]
            for m in Q.std_monos(e):
                dm = G.deg(m)
                alpha = tuple(x + y for x, y in zip(fk, dm))
                pieces.setdefault(alpha, []).append((k, m))
        current: dict = {}
        changed = set()
        for alpha in sorted(pieces):
            cols = sorted(pieces[alpha], key=lambda km: (-km[0], grevlex_key(km[1])))
            colidx = {km: j for j, km in enumerate(cols)}
            rowidx: dict = {}
            ti, tj, tv = [], [], []
            for j, (k, m) in enumerate(cols):
                for r, terms in cols_entries[k]:
                    for t, c in terms:
                        tm = tuple(x + y for x, y in zip(t, m))
                        for m2, c2 in Q.nf_mono(tm):
                            key = (r, m2)
                            i = rowidx.get(key)
                            if i is None:
                                i = rowidx[key] = len(rowidx)
                            ti.append(i)
                            tj.append(j)
                            tv.append(c * c2 % p)
            M = np.zeros((len(rowidx), len(cols)), dtype=np.int64)
            if ti:
                np.add.at(M, (np.asarray(ti), np.asarray(tj)), np.asarray(tv, dtype=np.int64))
                M %= p
            K, free = _kernels.nullspace(M, p)
            if free.size == 0:
                continue
            current[alpha] = (cols, colidx, K)
            # the part of this piece generated by lower degrees
            blocks = []
            for i in range(n):
                beta = tuple(x - y for x, y in zip(alpha, var_deg[i]))
                got = prev.get(beta)
                if got is None:
                    continue
                pcols, _, pK = got
                src_i, dst_i, cf = [], [], []
                ui = unit[i]
                for jj, (k, m) in enumerate(pcols):
                    mi = tuple(x + y for x, y in zip(m, ui))
                    for m2, c2 in Q.nf_mono(mi):
                        src_i.append(jj)
                        dst_i.append(colidx[(k, m2)])
                        cf.append(c2)
                block = np.zeros((pK.shape[0], len(cols)), dtype=np.int64)
                if src_i:
                    contrib = pK[:, src_i] * np.asarray(cf, dtype=np.int64) % p
                    np.add.at(block, (slice(None), np.asarray(dst_i)), contrib)
                    block %= p
                blocks.append(block)
            old = set()
            if blocks:
                L = np.vstack(blocks)
                old = set(_kernels.leading_columns(L, p).tolist())
            for row, f in zip(K, free.tolist()):
                k, m = cols[f]
                if f not in old:
                    vec: dict = {}
                    for jj in np.flatnonzero(row).tolist():
                        kk, mm = cols[jj]
                        vec.setdefault(kk, {})[mm] = int(row[jj])
                    gens_cols.append(vec)
                    gens_fine.append(alpha)
                    if len(gens_cols) > rank_cap:
                        raise ResourceCapError(f"kernel rank exceeds {rank_cap}")
                if not any(mono_divides(l, m) for l in leads[k]):
                    leads[k].append(m)
                    changed.add(k)
        for k in changed:
            new = dict(_hilbert_num(tuple(minimalize_monomials(list(leads[k]) + list(base_leads)))))
            total = poly_add_int(total, _shift(pos_num[k], src_tot[k]), scale=-1)
            total = poly_add_int(total, _shift(new, src_tot[k]))
            pos_num[k] = new
        prev = current
        if total == image_num:
            break
        d += 1
    return KernelResult(gens_cols, gens_fine, _kernel_numerator(Q, src_tot, total), leads, d)


def _kernel_numerator(Q, src_tot, coker_total) -> dict:
    return poly_add_int(free_numerator(Q, src_tot), coker_total, scale=-1)


def kernel_matrix(ring: Ring, source: GradedFreeModule, res: KernelResult) -> GradedMatrix:
    """Turn kernel generators into the matrix whose columns they are."""
    twists = [fd[0] for fd in res.fine_degrees]
    cols = [{r: Polynomial._raw(ring, terms) for r, terms in vec.items()} for vec in res.columns]
    return GradedMatrix(ring, source, GradedFreeModule(twists), check=False, cols=cols)


# -- syzygies -------------------------------------------------------------------

def _kernel_of(Q: QuotientRing, ideal_gens, M: GradedMatrix, **kw) -> GradedMatrix:
    reduced = [{r: Q.reduce(f) for r, f in col.items()} for col in M.cols]
    A = GradedMatrix(M.ring, M.target, M.source, check=False, cols=reduced)
    G, ft, fs = fine_setup(M.ring, ideal_gens, A)
    res = graded_kernel(Q, G, A, fs, ft, image_numerator(Q, A), **kw)
    out = kernel_matrix(M.ring, M.source, res)
    out.fine = (G, fs, list(res.fine_degrees))
    return out


def syzygies(M: GradedMatrix, **kw) -> GradedMatrix:
    """Minimal generators of ``ker M`` over the polynomial ring, as columns."""
    return _kernel_of(QuotientRing(M.ring, None), [], M, **kw)


def syzygies_mod(I, M: GradedMatrix, **kw) -> GradedMatrix:
    """Minimal generators of ``ker M`` over ``S/I``; ``I`` is an Ideal or generator list."""
    gens = list(getattr(I, "gens", I))
    Q = QuotientRing.of(M.ring, gens)
    return _kernel_of(Q, gens, M, **kw)
