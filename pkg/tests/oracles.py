"""Reference computations that share no code with the Groebner engine.

Monomial ideals are handled combinatorially on exponent vectors; general
homogeneous ideals by dense linear algebra on graded pieces via sympy's GF(p)
matrices.
"""

import itertools

import sympy
from sympy.polys.matrices import DomainMatrix

from burchres.algebra import monomials_of_degree


# -- exponent vectors --------------------------------------------------------------

def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def in_mono_ideal(m, gens):
    return any(divides(g, m) for g in gens)


def mono_piece(gens, n, d):
    return {m for m in monomials_of_degree(n, d) if in_mono_ideal(m, gens)}


def mono_minimal(gens):
    gens = set(gens)
    return {g for g in gens if not any(h != g and divides(h, g) for h in gens)}


def mono_colon(A, B, n, top):
    """Minimal generators of (A : B), found by scanning degrees up to ``top``."""
    members = []
    for d in range(top + 1):
        for m in monomials_of_degree(n, d):
            if all(in_mono_ideal(tuple(x + y for x, y in zip(m, b)), A) for b in B):
                members.append(m)
    return mono_minimal(members)


def mono_intersect(A, B):
    return mono_minimal(tuple(max(x, y) for x, y in zip(a, b)) for a in A for b in B)


def mono_product(A, B):
    return mono_minimal(tuple(x + y for x, y in zip(a, b)) for a in A for b in B)


def exps(ideal):
    """Exponent vectors of a monomial ideal's generators."""
    out = set()
    for g in ideal.gens:
        assert g.is_monomial()
        out.add(g.lead_monomial())
    return out


def random_monomial_gens(rng, n, max_deg, max_gens, min_deg=1):
    k = rng.randint(1, max_gens)
    out = set()
    for _ in range(k):
        d = rng.randint(min_deg, max_deg)
        out.add(rng.choice(monomials_of_degree(n, d)))
    return sorted(out)


# -- graded pieces over GF(p) --------------------------------------------------------

def _dm(rows, ncols, p):
    if not rows:
        return None
    return DomainMatrix([[sympy.GF(p)(c) for c in r] for r in rows], (len(rows), ncols), sympy.GF(p))


def rank_mod_p(rows, ncols, p):
    M = _dm(rows, ncols, p)
    return 0 if M is None else M.rank()


def piece_rows(polys, n, d, p):
    """Spanning set of the degree-d piece of the ideal generated by ``polys``."""
    mons = monomials_of_degree(n, d)
    idx = {m: i for i, m in enumerate(mons)}
    rows = []
    for g in polys:
        e = d - g.degree()
        if e < 0:
            continue
        for m in monomials_of_degree(n, e):
            v = [0] * len(mons)
            for t, c in g.data.items():
                v[idx[tuple(a + b for a, b in zip(t, m))]] = c % p
            rows.append(v)
    return mons, rows


def piece_dim(polys, n, d, p):
    mons, rows = piece_rows(polys, n, d, p)
    return rank_mod_p(rows, len(mons), p)


def in_piece(f, polys, n, p):
    """Is the homogeneous ``f`` in the ideal generated by ``polys``?"""
    d = f.degree()
    mons, rows = piece_rows(polys, n, d, p)
    idx = {m: i for i, m in enumerate(mons)}
    v = [0] * len(mons)
    for t, c in f.data.items():
        v[idx[t]] = c
    return rank_mod_p(rows + [v], len(mons), p) == rank_mod_p(rows, len(mons), p)


def colon_piece_dim(A_polys, B_polys, n, d, p):
    """dim_k of {f in S_d : f b in A for all generators b of B}."""
    mons = monomials_of_degree(n, d)
    nf = len(mons)
    blocks = []
    ncols = nf
    for b in B_polys:
        D = d + b.degree()
        tm, arows = piece_rows(A_polys, n, D, p)
        blocks.append((b, tm, arows, ncols))
        ncols += len(arows)
    eqs = []
    for b, tm, arows, off in blocks:
        ti = {m: i for i, m in enumerate(tm)}
        block = [[0] * ncols for _ in tm]
        for j, m in enumerate(mons):
            for t, c in b.data.items():
                block[ti[tuple(x + y for x, y in zip(t, m))]][j] += c
        for k, row in enumerate(arows):
            for i, c in enumerate(row):
                if c:
                    block[i][off + k] -= c
        eqs.extend([[c % p for c in r] for r in block])
    if not eqs:
        return nf
    M = _dm(eqs, ncols, p)
    ns = M.nullspace().to_Matrix()
    if ns.shape[0] == 0:
        return 0
    proj = [[int(ns[i, j]) % p for j in range(nf)] for i in range(ns.shape[0])]
    return rank_mod_p(proj, nf, p)


# -- modules over S/I, for kernel completeness ---------------------------------------

def _vec_piece(columns, twists_src, twists_tgt, ideal_polys, n, d, p):
    """Rows spanning (image of the columns + I*F_target) in degree d, over S-monomials."""
    basis = [(r, m) for r, t in enumerate(twists_tgt) for m in monomials_of_degree(n, d - t) if d - t >= 0]
    idx = {b: i for i, b in enumerate(basis)}
    rows = []
    for c, col in enumerate(columns):
        e = d - twists_src[c]
        if e < 0:
            continue
        for m in monomials_of_degree(n, e):
            v = [0] * len(basis)
            for r, f in col.items():
                for t, cf in f.data.items():
                    v[idx[(r, tuple(a + b for a, b in zip(t, m)))]] += cf
            rows.append([x % p for x in v])
    for r, t in enumerate(twists_tgt):
        for g in ideal_polys:
            e = d - t - g.degree()
            if e < 0:
                continue
            for m in monomials_of_degree(n, e):
                v = [0] * len(basis)
                for tt, cf in g.data.items():
                    v[idx[(r, tuple(a + b for a, b in zip(tt, m)))]] += cf
                rows.append([x % p for x in v])
    return basis, rows


def kernel_dim_mod_I(A, ideal_polys, d, p):
    """dim_k of ker(A: F_d -> G_d) over S/I, computed on S-pieces."""
    n = A.ring.nvars
    src, tgt = list(A.source.twists), list(A.target.twists)
    # domain: F_d / (I F)_d ; map into G_d / (I G)_d
    fbasis = [(c, m) for c, t in enumerate(src) for m in monomials_of_degree(n, d - t) if d - t >= 0]
    gbasis, irows = _vec_piece([], [], tgt, ideal_polys, n, d, p)
    gidx = {b: i for i, b in enumerate(gbasis)}
    # columns of the S-linear map, then quotient by I G via the nullspace trick
    nf, ni = len(fbasis), len(irows)
    eqs = [[0] * (nf + ni) for _ in gbasis]
    for j, (c, m) in enumerate(fbasis):
        for r, f in A.cols[c].items():
            for t, cf in f.data.items():
                eqs[gidx[(r, tuple(a + b for a, b in zip(t, m)))]][j] += cf
    for k, row in enumerate(irows):
        for i, cf in enumerate(row):
            if cf:
                eqs[i][nf + k] -= cf
    eqs = [[x % p for x in r] for r in eqs]
    if nf == 0:
        return 0
    if not eqs:
        ker_S = nf
    else:
        M = _dm(eqs, nf + ni, p)
        ns = M.nullspace().to_Matrix()
        proj = [[int(ns[i, j]) % p for j in range(nf)] for i in range(ns.shape[0])]
        ker_S = rank_mod_p(proj, nf, p)
    # subtract (I F)_d, which always lies in the S-kernel preimage
    _, ifrows = _vec_piece([], [], src, ideal_polys, n, d, p)
    return ker_S - rank_mod_p(ifrows, nf, p)


def image_dim_mod_I(B, ideal_polys, d, p):
    """dim_k of the image of B in F_d / (I F)_d."""
    n = B.ring.nvars
    src, tgt = list(B.source.twists), list(B.target.twists)
    basis, rows = _vec_piece(B.cols, src, tgt, ideal_polys, n, d, p)
    _, irows = _vec_piece([], [], tgt, ideal_polys, n, d, p)
    return rank_mod_p(rows, len(basis), p) - rank_mod_p(irows, len(basis), p)


def all_subsets(seq):
    for k in range(len(seq) + 1):
        yield from itertools.combinations(seq, k)
