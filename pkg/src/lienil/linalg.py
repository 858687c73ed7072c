"""Exact row spaces over Q and F_p.

A :class:`RowSpace` stores the canonical reduced row echelon form of a
subspace of K^n together with integer generating rows.  Over F_p everything
is int64 residues handled by :mod:`lienil._kernels`.  Over Q the generating
rows are integer vectors; a maximal independent subset is picked modulo a
large prime, its RREF is computed exactly with FLINT, and the remaining rows
are certified to lie in its span (falling back to a full exact reduction if
the certificate fails).
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

import flint
import numpy as np

from . import _kernels
from .scalars import FieldSpec

FILTER_PRIME = _kernels.MAX_PRIME


def _fmpz(M) -> flint.fmpz_mat:
    M = np.asarray(M)
    r, c = M.shape
    if r == 0 or c == 0:
        return flint.fmpz_mat(r, c)
    return flint.fmpz_mat(r, c, M.ravel().tolist())


def _np_int(M: flint.fmpz_mat) -> np.ndarray:
    rows = M.tolist()
    arr = np.array(rows, dtype=object).reshape(M.nrows(), M.ncols())
    try:
        return arr.astype(np.int64)
    except OverflowError:
        return arr


def _as_int_rows(rows, ncols) -> np.ndarray:
    if isinstance(rows, np.ndarray):
        return rows.reshape(-1, ncols)
    rows = list(rows)
    if not rows:
        return np.zeros((0, ncols), np.int64)
    arr = np.array(rows, dtype=object).reshape(len(rows), ncols)
    try:
        return arr.astype(np.int64)
    except OverflowError:
        return arr


def primitive_integer_row(row) -> list[int]:
    """Scale a rational row to coprime integers."""
    fr = [Fraction(v) for v in row]
    den = 1
    for v in fr:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


class RowSpace:
    """A subspace of K^ncols in canonical form."""

    __slots__ = ("field", "ncols", "pivots", "_R", "_num", "_den", "gens", "_numf")

    def __init__(self, field: FieldSpec, ncols: int):
        self.field = field
        self.ncols = ncols
        self.pivots = np.zeros(0, np.int64)
        self._R = np.zeros((0, ncols), np.int64)      # F_p RREF
        self._num = flint.fmpz_mat(0, ncols)           # Q RREF numerators
        self._den = flint.fmpz(1)
        self.gens = np.zeros((0, ncols), np.int64)
        self._numf = None                              # float copy of _num when exact

    # -- construction -------------------------------------------------------
    @classmethod
    def zero(cls, field: FieldSpec, ncols: int) -> "RowSpace":
        return cls(field, ncols)

    @classmethod
    def full(cls, field: FieldSpec, ncols: int) -> "RowSpace":
        return cls.from_rows(field, ncols, np.eye(ncols, dtype=np.int64))

    @classmethod
    def from_rows(cls, field: FieldSpec, ncols: int, rows) -> "RowSpace":
        """Span of integer rows (residues are taken mod p in characteristic p)."""
        G = _as_int_rows(rows, ncols)
        sp = cls(field, ncols)
        if G.shape[0] == 0:
            return sp
        p = field.characteristic
        if p:
            R, piv, _ = _kernels.echelon_mod_p(np.asarray(G % p, dtype=np.int64), p)
            sp._R, sp.pivots, sp.gens = R, piv, R
            return sp
        G = _drop_zero_rows(G)
        if G.shape[0] == 0:
            return sp
        _, _, sel = _kernels.echelon_mod_p(np.asarray(G % FILTER_PRIME, dtype=np.int64), FILTER_PRIME)
        S = G[sel]
        num, den, rank = _fmpz(S).rref()
        if rank != len(sel):
            raise ArithmeticError("rows independent mod p became dependent over Q")
        num = _top_rows(num, rank)
        piv = _pivots_of(num, rank)
        rest_mask = np.ones(G.shape[0], bool)
        rest_mask[sel] = False
        rest = G[rest_mask]
        numf = _float_form(num)
        if rest.shape[0] and not _all_in_span(rest, num, den, piv, numf):
            num, den, rank = _fmpz(G).rref()
            num = _top_rows(num, rank)
            piv = _pivots_of(num, rank)
            S = _np_int(num)
            numf = _float_form(num)
        sp._num, sp._den, sp.pivots, sp.gens = num, den, np.array(piv, np.int64), S
        sp._numf = numf
        return sp

    # -- basic queries -----------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __len__(self):
        return self.dim

    def is_zero(self) -> bool:
        return self.dim == 0

    def _same(self, other: "RowSpace"):
        if other.field != self.field or other.ncols != self.ncols:
            raise ValueError("row spaces live in different ambient spaces")

    def contains_rows(self, X) -> np.ndarray:
        """Boolean mask: which rows of the integer matrix X lie in the space."""
        X = _as_int_rows(X, self.ncols)
        if X.shape[0] == 0:
            return np.zeros(0, bool)
        p = self.field.characteristic
        if p:
            X = np.asarray(X % p, dtype=np.int64)
            if self.dim == 0:
                return ~X.any(axis=1)
            if float(p) * p * self.dim < _FLOAT_EXACT:
                # X is in the span iff X == X_P R (R has identity pivot columns)
                P = X[:, self.pivots].astype(np.float64) @ self._R.astype(np.float64)
                return ~((P.astype(np.int64) - X) % p).any(axis=1)
            res = _kernels.reduce_mod_p(X, self._R, self.pivots, p)
            return ~res.any(axis=1)
        return _in_span_mask(X, self._num, self._den, self.pivots, self._numf)

    def contains(self, row) -> bool:
        return bool(self.contains_rows([list(row)])[0])

    def leq(self, other: "RowSpace") -> bool:
        self._same(other)
        if self.dim > other.dim:
            return False
        return bool(other.contains_rows(self.gens).all()) if self.dim else True

    def __eq__(self, other):
        if not isinstance(other, RowSpace):
            return NotImplemented
        if other.field != self.field or other.ncols != self.ncols or other.dim != self.dim:
            return False
        if not np.array_equal(self.pivots, other.pivots):
            return False
        if self.field.characteristic:
            return np.array_equal(self._R, other._R)
        return self._num * other._den == other._num * self._den

    __hash__ = None

    def __add__(self, other: "RowSpace") -> "RowSpace":
        self._same(other)
        if other.dim == 0:
            return self
        if self.dim == 0:
            return other
        return RowSpace.from_rows(self.field, self.ncols, _vstack(self.gens, other.gens))

    def rref_rows(self) -> list[list]:
        """Canonical basis as lists of field values (ints mod p or Fractions)."""
        if self.field.characteristic:
            return [list(map(int, r)) for r in self._R]
        den = int(self._den)
        out = []
        for r in self._num.tolist():
            out.append([_q(int(v), den) for v in r])
        return out

    def integer_rows(self) -> np.ndarray:
        return self.gens

    def residues(self, X):
        """X minus its projection onto the space along non-pivot coordinates.

        Returns an int64 matrix over F_p, or an integer fmpz_mat equal to
        ``den * residual`` over Q (rows scale uniformly, kernels are unchanged).
        """
        X = _as_int_rows(X, self.ncols)
        p = self.field.characteristic
        if p:
            return _kernels.reduce_mod_p(np.asarray(X % p, dtype=np.int64), self._R, self.pivots, p)
        FX = _fmpz(X)
        if self.dim == 0:
            return FX
        sub = _fmpz(X[:, self.pivots])
        return FX * self._den - sub * self._num

    def __repr__(self):
        return f"RowSpace(dim={self.dim}, ncols={self.ncols}, {self.field})"


def _q(n: int, d: int):
    f = Fraction(n, d)
    return f.numerator if f.denominator == 1 else f


def _vstack(a, b):
    if a.dtype == object or b.dtype == object:
        return np.vstack([a.astype(object), b.astype(object)])
    return np.vstack([a, b])


def _drop_zero_rows(G):
    if G.dtype == object:
        keep = np.array([any(v != 0 for v in r) for r in G], bool)
    else:
        keep = G.any(axis=1)
    return G[keep]


def _top_rows(M: flint.fmpz_mat, r: int) -> flint.fmpz_mat:
    if r == M.nrows():
        return M
    rows = M.tolist()[:r]
    if r == 0:
        return flint.fmpz_mat(0, M.ncols())
    return flint.fmpz_mat(rows)


def _pivots_of(num: flint.fmpz_mat, r: int) -> list[int]:
    if r == 0:
        return []
    nz = np.array([[v != 0 for v in row] for row in num.tolist()[:r]], bool)
    return nz.argmax(axis=1).tolist()


_FLOAT_EXACT = float(2**52)


def _float_form(num: flint.fmpz_mat):
    """num as float64 if its entries are small enough for exact products."""
    if num.nrows() == 0:
        return None
    A = _np_int(num)
    if A.dtype == object or np.abs(A).max() >= 2**40:
        return None
    return A.astype(np.float64)


def _in_span_mask(X, num, den, piv, numf=None) -> np.ndarray:
    X = np.asarray(X)
    piv = list(piv)
    if numf is not None and X.dtype != object and len(piv):
        # den*X - X_P N computed in floating point is exact while every
        # partial sum stays below 2**52
        mx = float(np.abs(X).max()) if X.size else 0.0
        bound = mx * (abs(int(den)) + len(piv) * float(np.abs(numf).max()))
        if bound < _FLOAT_EXACT:
            Xf = X.astype(np.float64)
            D = Xf * float(int(den)) - Xf[:, piv] @ numf
            return ~D.any(axis=1)
    FX = _fmpz(X)
    if len(piv) == 0:
        D = FX
    else:
        D = FX * den - _fmpz(X[:, piv]) * num
    if D == flint.fmpz_mat(D.nrows(), D.ncols()):
        return np.ones(D.nrows(), bool)
    rows = D.tolist()
    return np.array([not any(r) for r in rows], bool)


def _all_in_span(X, num, den, piv, numf=None) -> bool:
    # chunked so a failure surfaces without converting everything
    step = 4096
    for s in range(0, X.shape[0], step):
        if not _in_span_mask(X[s:s + step], num, den, piv, numf).all():
            return False
    return True


def left_kernel(field: FieldSpec, blocks: list, nrows: int) -> np.ndarray:
    """Integer/residue basis of {c : c . B = 0 for every block B}.

    Each block is an (nrows x k) matrix: int64 residues over F_p, fmpz_mat
    over Q.
    """
    p = field.characteristic
    if p:
        cols = [np.asarray(b, dtype=np.int64) for b in blocks if np.asarray(b).shape[1]]
        if not cols:
            return np.eye(nrows, dtype=np.int64)
        A = np.hstack(cols)
        return _kernels.nullspace_mod_p(A.T.copy(), p)
    mats = [b for b in blocks if b.ncols()]
    if not mats:
        return np.eye(nrows, dtype=np.int64)
    rows = [[] for _ in range(nrows)]
    for b in mats:
        for i, r in enumerate(b.tolist()):
            rows[i].extend(r)
    A = flint.fmpz_mat(rows).transpose()
    N, nullity = A.nullspace()
    if nullity == 0:
        return np.zeros((0, nrows), np.int64)
    basis = N.transpose().tolist()[:nullity]
    return _as_int_rows([primitive_integer_row([int(v) for v in r]) for r in basis], nrows)
