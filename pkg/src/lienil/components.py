"""Dense coordinates on one multidegree component of F_r.

The words of multidegree ``d`` (all of the same length N) are listed in
lexicographic order, which is also the canonical length-then-lex order.  A
word is encoded as its base-r integer code; concatenation is then affine in
the codes, so multiplying whole blocks of row vectors is a matter of index
arithmetic (a Kronecker product followed by a column scatter).
"""
from __future__ import annotations

from functools import lru_cache
from math import factorial

import numpy as np

from .freealg import NcPoly, multidegree
from .linalg import primitive_integer_row
from .scalars import FieldSpec

_DENSE_INDEX_LIMIT = 1 << 22


def multinomial(d) -> int:
    n = factorial(sum(d))
    for k in d:
        n //= factorial(k)
    return n


def _words_rec(d: list, prefix: list, out: list):
    if not any(d):
        out.append(tuple(prefix))
        return
    for a in range(len(d)):
        if d[a]:
            d[a] -= 1
            prefix.append(a)
            _words_rec(d, prefix, out)
            prefix.pop()
            d[a] += 1


@lru_cache(maxsize=None)
def monomials(rank: int, d: tuple) -> tuple:
    """All words of multidegree d in canonical order."""
    d = tuple(d)
    if len(d) != rank:
        raise ValueError(f"multidegree {d} does not match rank {rank}")
    out: list = []
    _words_rec(list(d), [], out)
    return tuple(out)


def word_code(w, rank: int) -> int:
    c = 0
    for a in w:
        c = c * rank + a
    return c


class Component:
    """Coordinates for the multidegree-d part of F_rank."""

    def __init__(self, rank: int, d: tuple):
        self.rank = rank
        self.d = tuple(d)
        self.n = sum(d)
        self.words = monomials(rank, self.d)
        self.size = len(self.words)
        self.codes = np.array([word_code(w, rank) for w in self.words], dtype=np.int64)
        if rank ** self.n <= _DENSE_INDEX_LIMIT:
            idx = np.full(rank ** self.n if self.n else 1, -1, dtype=np.int64)
            idx[self.codes] = np.arange(self.size)
            self._dense = idx
            self._map = None
        else:
            self._dense = None
            self._map = {int(c): i for i, c in enumerate(self.codes)}

    def __repr__(self):
        return f"Component(rank={self.rank}, d={self.d}, size={self.size})"

    def index_of_codes(self, codes: np.ndarray) -> np.ndarray:
        if self._dense is not None:
            out = self._dense[codes]
        else:
            out = np.array([self._map.get(int(c), -1) for c in np.ravel(codes)], dtype=np.int64)
            out = out.reshape(np.shape(codes))
        if (out < 0).any():
            raise KeyError("word outside this component")
        return out

    def index(self, w) -> int:
        return int(self.index_of_codes(np.array([word_code(w, self.rank)]))[0])

    # -- polynomial <-> vector ------------------------------------------------
    def vector(self, f: NcPoly, field: FieldSpec | None = None) -> list:
        """Coordinates of f (raw field values); f must live in this component."""
        v = [0] * self.size
        for w, c in f.terms.items():
            if multidegree(w, self.rank) != self.d:
                raise ValueError(f"term {w} is not of multidegree {self.d}")
            v[self.index(w)] = c
        return v

    def int_vector(self, f: NcPoly) -> list[int]:
        """Integer coordinates of a nonzero multiple of f (residues over F_p)."""
        v = self.vector(f)
        if f.field.characteristic:
            return [int(c) for c in v]
        return primitive_integer_row(v)

    def poly(self, row, field: FieldSpec) -> NcPoly:
        terms = {self.words[i]: c for i, c in enumerate(row) if c}
        return NcPoly(self.rank, field, terms)


@lru_cache(maxsize=None)
def component(rank: int, d: tuple) -> Component:
    return Component(rank, tuple(d))


def add_deg(d1, d2) -> tuple:
    return tuple(a + b for a, b in zip(d1, d2))


def sub_deg(d1, d2):
    r = tuple(a - b for a, b in zip(d1, d2))
    return r if min(r, default=0) >= 0 else None


def unit(rank: int, i: int) -> tuple:
    e = [0] * rank
    e[i] = 1
    return tuple(e)


def sub_multidegrees(d) -> list:
    """All e with 0 <= e <= d componentwise, including 0 and d."""
    out = [()]
    for k in d:
        out = [e + (i,) for e in out for i in range(k + 1)]
    return out


# ---------------------------------------------------------------------------
# block products on integer row matrices


def _reduce(X, p: int):
    return X % p if p else X


@lru_cache(maxsize=None)
def product_index(rank: int, d1: tuple, d2: tuple) -> np.ndarray:
    """Column index in component(d1+d2) of w1*w2, as an (n1 x n2) array."""
    c1, c2 = component(rank, d1), component(rank, d2)
    t = component(rank, add_deg(d1, d2))
    codes = c1.codes[:, None] * (rank ** c2.n) + c2.codes[None, :]
    return t.index_of_codes(codes)


def _widen(A, B):
    if A.dtype == object or B.dtype == object:
        return A.astype(object), B.astype(object)
    big = 1 << 30
    if (A.size and np.abs(A).max() >= big) or (B.size and np.abs(B).max() >= big):
        return A.astype(object), B.astype(object)
    return A, B


def block_products(A, d1, B, d2, rank: int, p: int = 0) -> np.ndarray:
    """All products a_i * b_j, row (i, j) at position i * len(B) + j."""
    A = np.asarray(A)
    B = np.asarray(B)
    tgt = component(rank, add_deg(d1, d2))
    if A.shape[0] == 0 or B.shape[0] == 0:
        return np.zeros((0, tgt.size), np.int64)
    A, B = _widen(A, B)
    K = np.einsum("ia,jb->ijab", A, B).reshape(A.shape[0] * B.shape[0], -1)
    out = np.zeros((K.shape[0], tgt.size), dtype=K.dtype)
    out[:, product_index(rank, tuple(d1), tuple(d2)).ravel()] = K
    return _reduce(out, p)


def identity_rows(rank: int, d) -> np.ndarray:
    return np.eye(component(rank, tuple(d)).size, dtype=np.int64)


def commutator_with_words(A, d1, e, rank: int, p: int = 0) -> np.ndarray:
    """Rows [a_i, w] for every row a_i of A and every word w of multidegree e."""
    A = np.asarray(A)
    I = identity_rows(rank, e)
    k, m = A.shape[0], I.shape[0]
    left = block_products(A, d1, I, e, rank)                  # a_i w, row i*m + t
    right = block_products(I, e, A, d1, rank)                 # w a_i, row t*k + i
    right = right.reshape(m, k, -1).transpose(1, 0, 2).reshape(k * m, -1)
    return _reduce(left - right, p)


def letter_left(A, d, y: int, rank: int, p: int = 0):
    return block_products(identity_rows(rank, unit(rank, y))[:1], unit(rank, y), A, d, rank, p)


def letter_right(A, d, y: int, rank: int, p: int = 0):
    return block_products(A, d, identity_rows(rank, unit(rank, y))[:1], unit(rank, y), rank, p)


def letter_commutator(A, d, y: int, rank: int, p: int = 0):
    return _reduce(letter_right(A, d, y, rank) - letter_left(A, d, y, rank), p)
