"""Dense linear algebra over GF(p): the hot kernel of the graded engine.

Two implementations of row reduction share one contract.  The numba one is
used when numba imports and ``BURCHRES_NO_NUMBA`` is unset or "0"; the
numpy one is always importable and is what the benchmark compares against.
Matrices are ``int64`` with entries in ``[0, p)``; p must stay below 2**31.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("BURCHRES_NO_NUMBA", "0") not in ("", "0")

try:  # pragma: no cover - import guard
    if _DISABLED:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def rref_numpy(M: np.ndarray, p: int) -> np.ndarray:
    """Reduce ``M`` in place to reduced row echelon form mod p; return pivot columns."""
    nrows, ncols = M.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            M[[r, i]] = M[[i, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        nz = c + np.flatnonzero(M[r, c:])
        M[r, nz] = M[r, nz] * inv % p
        col = M[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            M[np.ix_(rows, nz)] = (M[np.ix_(rows, nz)] - np.outer(col[rows], M[r, nz])) % p
        pivots.append(c)
        r += 1
    return np.asarray(pivots, dtype=np.int64)


if HAVE_NUMBA:

    @njit(cache=True)
    def _inv(a, p):
        t, newt = 0, 1
        r, newr = p, a % p
        while newr != 0:
            q = r // newr
            t, newt = newt, t - q * newt
            r, newr = newr, r - q * newr
        if t < 0:
            t += p
        return t

    @njit(cache=True)
    def _rref_numba(M, p):
        nrows, ncols = M.shape
        pivots = np.empty(min(nrows, ncols), dtype=np.int64)
        idx = np.empty(ncols, dtype=np.int64)
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if M[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, ncols):
                    tmp = M[r, j]
                    M[r, j] = M[piv, j]
                    M[piv, j] = tmp
            inv = _inv(M[r, c], p)
            # the pivot row is usually sparse: update only its nonzero columns
            nnz = 0
            for j in range(c, ncols):
                if M[r, j] != 0:
                    M[r, j] = M[r, j] * inv % p
                    idx[nnz] = j
                    nnz += 1
            for i in range(nrows):
                if i != r:
                    f = M[i, c]
                    if f != 0:
                        for t in range(nnz):
                            j = idx[t]
                            M[i, j] = (M[i, j] - f * M[r, j]) % p
            pivots[r] = c
            r += 1
        return pivots[:r].copy()

    def rref_numba(M: np.ndarray, p: int) -> np.ndarray:
        return _rref_numba(M, np.int64(p))

else:  # pragma: no cover
    rref_numba = None


def rref(M: np.ndarray, p: int) -> np.ndarray:
    """Dispatch to the compiled kernel when available."""
    if M.size == 0:
        return np.zeros(0, dtype=np.int64)
    if HAVE_NUMBA:
        return rref_numba(M, p)
    return rref_numpy(M, p)


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


def rank(M: np.ndarray, p: int) -> int:
    return len(rref(M.copy(), p))


def nullspace(M: np.ndarray, p: int) -> tuple:
    """Basis of ``{v : M v = 0}`` as rows, plus the free (lead) column of each row.

    With columns ordered ascending in a term order, row ``k`` has its largest
    nonzero entry at ``free[k]``, so ``free`` is exactly the set of leading
    terms of the kernel.
    """
    nrows, ncols = M.shape
    R = M.copy()
    piv = rref(R, p) if nrows else np.zeros(0, dtype=np.int64)
    is_piv = np.zeros(ncols, dtype=bool)
    is_piv[piv] = True
    free = np.flatnonzero(~is_piv)
    K = np.zeros((free.size, ncols), dtype=np.int64)
    if free.size:
        K[np.arange(free.size), free] = 1
        if piv.size:
            K[:, piv] = (-R[: piv.size, :][:, free].T) % p
    return K, free


def leading_columns(M: np.ndarray, p: int) -> np.ndarray:
    """Set of largest-index nonzero positions over the row space of ``M``."""
    if M.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    R = M[:, ::-1].copy()
    piv = rref(R, p)
    return M.shape[1] - 1 - piv
