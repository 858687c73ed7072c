"""Hot loops: row echelon forms and residues modulo a prime.

Each kernel has a numba implementation and a pure-numpy one.  The numba path
is used unless numba is missing or ``LIENIL_NO_NUMBA`` is set to a nonempty,
non-"0" value.  Both paths return identical reduced row echelon forms (the RREF
of a row space is unique); the choice of independent generating rows may differ.

All matrices are int64 with entries in [0, p).  p must be below 2**31 so that
products of two residues fit in int64.
"""
from __future__ import annotations

import os

import numpy as np

MAX_PRIME = 2**31 - 1


def _want_numba() -> bool:
    flag = os.environ.get("LIENIL_NO_NUMBA", "")
    return flag in ("", "0")


try:
    if not _want_numba():
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# numpy implementations


def _inv_mod(a: int, p: int) -> int:
    return pow(int(a), -1, p)


def echelon_mod_p_numpy(M: np.ndarray, p: int):
    M = np.array(M, dtype=np.int64, copy=True) % p
    n, m = M.shape
    order = np.arange(n)
    pivots = []
    r = 0
    for j in range(m):
        if r == n:
            break
        nz = np.flatnonzero(M[r:, j])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
            order[[r, k]] = order[[k, r]]
        M[r] = M[r] * _inv_mod(M[r, j], p) % p
        col = M[:, j].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            M[rows] = (M[rows] - np.outer(col[rows], M[r])) % p
        pivots.append(j)
        r += 1
    return M[:r].copy(), np.array(pivots, dtype=np.int64), np.sort(order[:r])


def reduce_mod_p_numpy(X: np.ndarray, R: np.ndarray, pivots: np.ndarray, p: int):
    X = np.array(X, dtype=np.int64, copy=True) % p
    for k, j in enumerate(pivots):
        c = X[:, j]
        rows = np.flatnonzero(c)
        if rows.size:
            X[rows] = (X[rows] - np.outer(c[rows], R[k])) % p
    return X


# ---------------------------------------------------------------------------
# numba implementations

if HAVE_NUMBA:

    @njit(cache=True)
    def _inv_mod_nb(a, p):
        # extended Euclid; a is nonzero mod p
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
    def _echelon_nb(M, p):
        n, m = M.shape
        cap = min(n, m)
        B = np.zeros((cap, m), np.int64)
        piv = np.empty(cap, np.int64)
        sel = np.empty(cap, np.int64)
        row = np.empty(m, np.int64)
        r = 0
        for i in range(n):
            if r == cap:
                break
            for j in range(m):
                row[j] = M[i, j] % p
            for k in range(r):
                c = row[piv[k]]
                if c != 0:
                    for j in range(m):
                        b = B[k, j]
                        if b != 0:
                            row[j] = (row[j] - c * b) % p
            j0 = -1
            for j in range(m):
                if row[j] != 0:
                    j0 = j
                    break
            if j0 < 0:
                continue
            inv = _inv_mod_nb(row[j0], p)
            for j in range(m):
                if row[j] != 0:
                    row[j] = row[j] * inv % p
            for k in range(r):
                c = B[k, j0]
                if c != 0:
                    for j in range(m):
                        v = row[j]
                        if v != 0:
                            B[k, j] = (B[k, j] - c * v) % p
            for j in range(m):
                B[r, j] = row[j]
            piv[r] = j0
            sel[r] = i
            r += 1
        return B[:r], piv[:r], sel[:r]

    @njit(cache=True)
    def _reduce_nb(X, R, piv, p):
        n, m = X.shape
        out = np.empty_like(X)
        for i in range(n):
            for j in range(m):
                out[i, j] = X[i, j] % p
            for k in range(piv.shape[0]):
                c = out[i, piv[k]]
                if c != 0:
                    for j in range(m):
                        b = R[k, j]
                        if b != 0:
                            out[i, j] = (out[i, j] - c * b) % p
        return out

    def echelon_mod_p_numba(M, p):
        M = np.ascontiguousarray(M, dtype=np.int64)
        B, piv, sel = _echelon_nb(M, np.int64(p))
        order = np.argsort(piv, kind="stable")
        return B[order].copy(), piv[order].copy(), np.sort(sel)

    def reduce_mod_p_numba(X, R, pivots, p):
        X = np.ascontiguousarray(X, dtype=np.int64)
        R = np.ascontiguousarray(R, dtype=np.int64)
        return _reduce_nb(X, R, np.ascontiguousarray(pivots, dtype=np.int64), np.int64(p))


def echelon_mod_p(M, p: int):
    """Reduced row echelon form of M over F_p.

    Returns ``(R, pivots, selected)``: the nonzero RREF rows sorted by pivot
    column, the pivot columns, and indices of rows of M forming a basis of
    the row space.
    """
    if p > MAX_PRIME:
        raise ValueError("modulus too large for int64 kernels")
    M = np.asarray(M, dtype=np.int64)
    if M.ndim != 2:
        raise ValueError("expected a matrix")
    if M.shape[0] == 0 or M.shape[1] == 0:
        return (np.zeros((0, M.shape[1]), np.int64), np.zeros(0, np.int64), np.zeros(0, np.int64))
    if HAVE_NUMBA:
        return echelon_mod_p_numba(M, p)
    return echelon_mod_p_numpy(M, p)


def reduce_mod_p(X, R, pivots, p: int):
    """Residues of the rows of X modulo the row space with RREF (R, pivots)."""
    X = np.asarray(X, dtype=np.int64)
    if X.shape[0] == 0 or len(pivots) == 0:
        return X % p
    if HAVE_NUMBA:
        return reduce_mod_p_numba(X, R, pivots, p)
    return reduce_mod_p_numpy(X, R, pivots, p)


def nullspace_mod_p(M, p: int) -> np.ndarray:
    """Basis (as rows) of {v : M v = 0} over F_p."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[1]
    R, piv, _ = echelon_mod_p(M, p)
    free = [j for j in range(n) if j not in set(piv.tolist())]
    N = np.zeros((len(free), n), np.int64)
    for t, j in enumerate(free):
        N[t, j] = 1
        for k, pj in enumerate(piv):
            N[t, pj] = (-R[k, j]) % p
    return N


def warmup():
    """Compile (or load from the on-disk cache) the numba kernels."""
    if HAVE_NUMBA:
        A = np.array([[1, 2], [3, 4]], np.int64)
        R, piv, _ = echelon_mod_p_numba(A, 5)
        reduce_mod_p_numba(A, R, piv, 5)
