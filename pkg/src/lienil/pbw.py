"""Lyndon basis of the free Lie algebra, correct words, PBW coordinates, weight.

Lie basis elements are ordered by *decreasing* degree, ties broken on the
Lyndon word (lexicographically by default, reverse-lex on request).  A correct
word is a product e_{i1} ... e_{it} with nondecreasing indices in that order;
these products form a basis of the free associative algebra.  The weight of a
correct word is sum(deg e_ij) - t + 1, and the weight of a polynomial is the
least weight occurring in its PBW expansion.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import flint
import numpy as np

from .components import component
from .freealg import NcPoly, commutator, multidegree
from .scalars import QQ, FieldSpec

MAX_WEIGHT_RANK = 3
TIEBREAKS = ("lex", "revlex")


def lyndon_words(rank: int, max_len: int) -> list[tuple]:
    """Lyndon words of length <= max_len in lexicographic order (Duval)."""
    out = []
    if rank < 1 or max_len < 1:
        return out
    w = [-1]
    while w:
        w[-1] += 1
        out.append(tuple(w))
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == rank - 1:
            w.pop()
    return out


def is_lyndon(w) -> bool:
    w = tuple(w)
    return bool(w) and all(w < w[i:] + w[:i] for i in range(1, len(w)))


def standard_factorization(w: tuple) -> tuple[tuple, tuple]:
    """w = u v with v the longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(f"{w} has no standard factorization")


def bracketing(w: tuple):
    if len(w) == 1:
        return w[0]
    u, v = standard_factorization(w)
    return (bracketing(u), bracketing(v))


def bracket_expansion(tree, rank: int, field: FieldSpec = QQ) -> NcPoly:
    if isinstance(tree, int):
        return NcPoly.gen(tree, rank, field)
    return commutator(bracket_expansion(tree[0], rank, field), bracket_expansion(tree[1], rank, field))


def witt_count(rank: int, n: int) -> int:
    """Dimension of the degree-n part of the free Lie algebra (necklace formula)."""
    total = 0
    for k in range(1, n + 1):
        if n % k == 0:
            total += _mobius(k) * rank ** (n // k)
    return total // n


def _mobius(n: int) -> int:
    res = 1
    k = 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            res = -res
        k += 1
    if n > 1:
        res = -res
    return res


def format_bracket(tree, rank: int) -> str:
    from .polytext import letter_name
    if isinstance(tree, int):
        return letter_name(tree, rank)
    return f"[{format_bracket(tree[0], rank)},{format_bracket(tree[1], rank)}]"


@dataclass(frozen=True)
class LieBasisElement:
    lyndon: tuple
    bracketing: object
    expansion: NcPoly = field(compare=False, repr=False)
    degree: int
    multidegree: tuple
    index: int

    def __str__(self):
        return format_bracket(self.bracketing, self.expansion.rank)


def _order_key(w: tuple, tiebreak: str):
    if tiebreak == "lex":
        return (-len(w), w)
    if tiebreak == "revlex":
        return (-len(w), tuple(-a for a in w))
    raise ValueError(f"unknown tie-break {tiebreak!r}")


@lru_cache(maxsize=None)
def _basis(rank: int, max_degree: int, tiebreak: str) -> tuple:
    words = sorted(lyndon_words(rank, max_degree), key=lambda w: _order_key(w, tiebreak))
    out = []
    for i, w in enumerate(words):
        tree = bracketing(w)
        out.append(LieBasisElement(w, tree, bracket_expansion(tree, rank), len(w),
                                   multidegree(w, rank), i))
    return tuple(out)


def lyndon_basis(rank: int, max_degree: int, tiebreak: str = "lex", *, allow_large_rank=False) -> list:
    """Lyndon-bracket basis of degrees 1..max_degree, in the global order."""
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    if rank > MAX_WEIGHT_RANK and not allow_large_rank:
        raise ValueError(f"rank {rank} > {MAX_WEIGHT_RANK} is outside the weight theory")
    return list(_basis(rank, max_degree, tiebreak))


@dataclass(frozen=True)
class CorrectWord:
    factors: tuple
    weight: int
    degrees: tuple = field(compare=False)

    @property
    def length(self):
        return len(self.factors)

    def is_proper(self):
        return all(k >= 2 for k in self.degrees)


def _cw_weight(degrees) -> int:
    return sum(degrees) - len(degrees) + 1


@lru_cache(maxsize=None)
def _correct_words(rank: int, d: tuple, tiebreak: str, large: bool) -> tuple:
    n = sum(d)
    basis = lyndon_basis(rank, n, tiebreak, allow_large_rank=large)
    out = []

    def rec(start, rem, acc):
        if not any(rem):
            degs = tuple(basis[i].degree for i in acc)
            out.append(CorrectWord(tuple(acc), _cw_weight(degs), degs))
            return
        for i in range(start, len(basis)):
            md = basis[i].multidegree
            if all(a <= b for a, b in zip(md, rem)):
                acc.append(i)
                rec(i, tuple(b - a for a, b in zip(md, rem)), acc)
                acc.pop()

    rec(0, d, [])
    return tuple(out)


def correct_words(rank: int, d, tiebreak: str = "lex", *, allow_large_rank=False) -> list:
    d = tuple(d)
    if len(d) != rank:
        raise ValueError("multidegree length must equal the rank")
    if sum(d) < 1:
        raise ValueError("correct words need positive total degree")
    return list(_correct_words(rank, d, tiebreak, allow_large_rank))


def expand_correct_word(cw: CorrectWord, rank: int, field: FieldSpec = QQ, tiebreak="lex",
                        *, allow_large_rank=False) -> NcPoly:
    n = sum(cw.degrees)
    basis = lyndon_basis(rank, max(n, 1), tiebreak, allow_large_rank=allow_large_rank)
    r = NcPoly.one(rank, field)
    for i in cw.factors:
        r = r * basis[i].expansion.to_field(field)
    return r


@lru_cache(maxsize=None)
def expansion_matrix(rank: int, d: tuple, tiebreak: str = "lex", large: bool = False) -> np.ndarray:
    """Integer matrix whose rows are the correct-word expansions at multidegree d."""
    comp = component(rank, d)
    cws = _correct_words(rank, d, tiebreak, large)
    E = np.zeros((len(cws), comp.size), dtype=np.int64)
    for i, cw in enumerate(cws):
        f = expand_correct_word(cw, rank, QQ, tiebreak, allow_large_rank=large)
        E[i] = comp.vector(f)
    return E


@lru_cache(maxsize=None)
def _inverse(rank: int, d: tuple, tiebreak: str) -> list:
    E = expansion_matrix(rank, d, tiebreak)
    M = flint.fmpz_mat(E.tolist())
    det = M.det()
    if det == 0:
        raise RuntimeError(f"correct-word expansions are singular at {d}: PBW violated")
    inv = M.inv()
    return [[int(v.p) if v.q == 1 else None for v in row] for row in inv.tolist()]


@dataclass
class PbwDecomposition:
    rank: int
    field: FieldSpec
    tiebreak: str
    coefficients: dict  # (multidegree, CorrectWord) -> nonzero raw coefficient

    def expand(self) -> NcPoly:
        r = NcPoly.zero(self.rank, self.field)
        for (_, cw), c in self.coefficients.items():
            r = r + expand_correct_word(cw, self.rank, self.field, self.tiebreak).scale(c)
        return r

    def weights(self) -> list[int]:
        return [cw.weight for (_, cw) in self.coefficients]

    def min_weight(self):
        return min(self.weights(), default=math.inf)


def pbw_decompose(f: NcPoly, tiebreak: str = "lex") -> PbwDecomposition:
    if f.rank > MAX_WEIGHT_RANK:
        raise ValueError(f"PBW coordinates are provided for rank <= {MAX_WEIGHT_RANK}")
    from .freealg import multihomo_split
    field = f.field
    coeffs = {}
    for d, part in sorted(multihomo_split(f).items()):
        if sum(d) == 0:
            coeffs[(d, CorrectWord((), 1, ()))] = part.coeff(())
            continue
        comp = component(f.rank, d)
        v = comp.vector(part)
        inv = _inverse(f.rank, d, tiebreak)
        cws = _correct_words(f.rank, d, tiebreak, False)
        for i, cw in enumerate(cws):
            s = 0
            for j, vj in enumerate(v):
                if vj:
                    s += vj * inv[j][i]
            s = field.coerce(s)
            if s:
                coeffs[(d, cw)] = s
    return PbwDecomposition(f.rank, field, tiebreak, coeffs)


def weight(f: NcPoly, tiebreak: str = "lex"):
    """Least weight in the PBW expansion of f; math.inf for f = 0."""
    return pbw_decompose(f, tiebreak).min_weight()


def weight_span_rows(rank: int, d: tuple, min_weight: int, tiebreak: str = "lex") -> np.ndarray:
    """Expansions of the correct words of multidegree d with weight >= min_weight."""
    E = expansion_matrix(rank, tuple(d), tiebreak)
    cws = _correct_words(rank, tuple(d), tiebreak, False)
    keep = [i for i, cw in enumerate(cws) if cw.weight >= min_weight]
    return E[keep]


def proper_rows(rank: int, d: tuple, tiebreak: str = "lex") -> np.ndarray:
    """Expansions of the proper correct words (all factors of degree >= 2)."""
    large = rank > MAX_WEIGHT_RANK
    E = expansion_matrix(rank, tuple(d), tiebreak, large)
    cws = _correct_words(rank, tuple(d), tiebreak, large)
    keep = [i for i, cw in enumerate(cws) if cw.is_proper()]
    return E[keep]
