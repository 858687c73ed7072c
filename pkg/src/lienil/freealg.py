"""Noncommutative polynomials in the free unital associative algebra F_r.

A word is a tuple of generator indices; the empty tuple is the unit.  An
:class:`NcPoly` is a sparse map word -> nonzero coefficient over a
:class:`~lienil.scalars.FieldSpec`.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .scalars import QQ, FieldError, FieldSpec

Word = tuple
MultiDegree = tuple


def word_key(w: Word):
    return (len(w), w)


def multidegree(w: Word, rank: int) -> MultiDegree:
    d = [0] * rank
    for a in w:
        d[a] += 1
    return tuple(d)


def _clean(terms: dict, field: FieldSpec) -> dict:
    p = field.characteristic
    out = {}
    if p:
        for w, c in terms.items():
            c %= p
            if c:
                out[w] = c
    else:
        for w, c in terms.items():
            if c:
                if isinstance(c, Fraction) and c.denominator == 1:
                    c = c.numerator
                out[w] = c
    return out


class NcPoly:
    __slots__ = ("rank", "field", "terms", "_hash")

    def __init__(self, rank: int, field: FieldSpec = QQ, terms: Mapping | None = None, *, _trusted=False):
        self.rank = rank
        self.field = field
        if terms is None:
            self.terms = {}
        elif _trusted:
            self.terms = terms
        else:
            cooked = {}
            for w, c in terms.items():
                w = tuple(w)
                for a in w:
                    if not 0 <= a < rank:
                        raise ValueError(f"letter {a} outside rank {rank}")
                cooked[w] = cooked.get(w, 0) + field.coerce(c)
            self.terms = _clean(cooked, field)
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, rank, field=QQ):
        return cls(rank, field, {}, _trusted=True)

    @classmethod
    def one(cls, rank, field=QQ):
        return cls(rank, field, {(): 1}, _trusted=True)

    @classmethod
    def const(cls, c, rank, field=QQ):
        return cls(rank, field, {(): c})

    @classmethod
    def gen(cls, i, rank, field=QQ):
        if not 0 <= i < rank:
            raise ValueError(f"generator {i} outside rank {rank}")
        return cls(rank, field, {(i,): 1}, _trusted=True)

    @classmethod
    def gens(cls, rank, field=QQ):
        return [cls.gen(i, rank, field) for i in range(rank)]

    @classmethod
    def monomial(cls, word, rank, field=QQ, coeff=1):
        return cls(rank, field, {tuple(word): coeff})

    def _new(self, terms, clean=True):
        if clean:
            terms = _clean(terms, self.field)
        return NcPoly(self.rank, self.field, terms, _trusted=True)

    def _check(self, other: "NcPoly"):
        if other.field != self.field:
            raise FieldError(f"mixed fields {self.field} and {other.field}")
        if other.rank != self.rank:
            raise ValueError(f"rank mismatch {self.rank} vs {other.rank}")

    def _lift(self, other):
        if isinstance(other, NcPoly):
            self._check(other)
            return other
        return NcPoly.const(other, self.rank, self.field)

    # -- ring structure -------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, 0) + c
        return self._new(t)

    __radd__ = __add__

    def __neg__(self):
        return self._new({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c):
        c = self.field.coerce(c)
        if not c:
            return NcPoly.zero(self.rank, self.field)
        return self._new({w: a * c for w, a in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NcPoly):
            return self.scale(other)
        self._check(other)
        t = defaultdict(int)
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                t[w1 + w2] += c1 * c2
        return self._new(t)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(self.field.inv(self.field.coerce(c)))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        r = NcPoly.one(self.rank, self.field)
        base = self
        while k:
            if k & 1:
                r = r * base
            base = base * base
            k >>= 1
        return r

    def __eq__(self, other):
        if isinstance(other, NcPoly):
            return self.rank == other.rank and self.field == other.field and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == NcPoly.const(other, self.rank, self.field)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, self.field, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        for w in sorted(self.terms, key=word_key):
            yield w, self.terms[w]

    def coeff(self, word):
        return self.terms.get(tuple(word), 0)

    def __repr__(self):
        from .polytext import format_poly
        return f"NcPoly({format_poly(self)!r}, rank={self.rank}, {self.field})"

    def __str__(self):
        from .polytext import format_poly
        return format_poly(self)

    # -- degrees ----------------------------------------------------------
    def degree(self):
        return max((len(w) for w in self.terms), default=-1)

    def degree_in(self, var: int):
        return max((w.count(var) for w in self.terms), default=-1)

    def multidegrees(self) -> set:
        return {multidegree(w, self.rank) for w in self.terms}

    def is_multihomogeneous(self):
        return len(self.multidegrees()) <= 1

    def the_multidegree(self) -> MultiDegree:
        ds = self.multidegrees()
        if len(ds) != 1:
            raise ValueError("polynomial is not multihomogeneous (or is zero)")
        return next(iter(ds))

    def with_rank(self, rank: int) -> "NcPoly":
        """Same polynomial viewed in a free algebra of larger rank."""
        if rank < self.rank:
            for w in self.terms:
                if any(a >= rank for a in w):
                    raise ValueError("polynomial uses letters beyond the requested rank")
        return NcPoly(rank, self.field, dict(self.terms), _trusted=True)

    def to_field(self, field: FieldSpec) -> "NcPoly":
        return NcPoly(self.rank, field, {w: field.coerce(c) for w, c in self.terms.items()})


# ---------------------------------------------------------------------------
# commutators and operators


def commutator(a: NcPoly, b: NcPoly) -> NcPoly:
    return a * b - b * a


def right_normed(*args: NcPoly) -> NcPoly:
    """[a1, ..., an] = [[a1, ..., a_{n-1}], an]."""
    if len(args) == 1 and isinstance(args[0], (list, tuple)):
        args = tuple(args[0])
    if len(args) < 2:
        raise ValueError("a commutator needs at least two arguments")
    r = args[0]
    for a in args[1:]:
        r = commutator(r, a)
    return r


def apply_operator_word(a: NcPoly, ops: Sequence[tuple[str, NcPoly]]) -> NcPoly:
    """Apply R_y (a -> ay), D_y (a -> [a, y]) and L_y (a -> ya) left to right."""
    for kind, y in ops:
        if kind == "R":
            a = a * y
        elif kind == "D":
            a = commutator(a, y)
        elif kind == "L":
            a = y * a
        else:
            raise ValueError(f"unknown operator kind {kind!r}")
    return a


# ---------------------------------------------------------------------------
# substitutions and gradings


def substitute(f: NcPoly, images: Mapping[int, NcPoly], rank: int | None = None) -> NcPoly:
    """Apply the unital endomorphism x_i -> images[i] (identity where absent).

    The target rank defaults to the rank of the images (or of ``f``).
    """
    if rank is None:
        ranks = {g.rank for g in images.values()}
        if len(ranks) > 1:
            raise ValueError("images live in different ranks")
        rank = ranks.pop() if ranks else f.rank
    field = f.field
    for g in images.values():
        if g.field != field:
            raise FieldError(f"mixed fields {field} and {g.field}")
    img = []
    for i in range(f.rank):
        g = images.get(i)
        if g is None:
            if i >= rank:
                raise ValueError(f"generator {i} has no image inside rank {rank}")
            g = NcPoly.gen(i, rank, field)
        elif g.rank != rank:
            g = g.with_rank(rank)
        img.append(g.terms)

    # memoise prefix images; words in one polynomial share prefixes often
    cache = {(): {(): 1}}

    def image_of(w):
        r = cache.get(w)
        if r is not None:
            return r
        left = image_of(w[:-1])
        t = defaultdict(int)
        for u, c in left.items():
            for v, d in img[w[-1]].items():
                t[u + v] += c * d
        r = _clean(t, field)
        cache[w] = r
        return r

    out = defaultdict(int)
    for w, c in f.terms.items():
        for u, d in image_of(w).items():
            out[u] += c * d
    return NcPoly(rank, field, _clean(out, field), _trusted=True)


def multihomo_component(f: NcPoly, d: MultiDegree) -> NcPoly:
    d = tuple(d)
    return NcPoly(f.rank, f.field, {w: c for w, c in f.terms.items()
                                     if multidegree(w, f.rank) == d}, _trusted=True)


def multihomo_split(f: NcPoly) -> dict:
    parts = defaultdict(dict)
    for w, c in f.terms.items():
        parts[multidegree(w, f.rank)][w] = c
    return {d: NcPoly(f.rank, f.field, t, _trusted=True) for d, t in parts.items()}


def homogeneous_split(f: NcPoly) -> dict:
    parts = defaultdict(dict)
    for w, c in f.terms.items():
        parts[len(w)][w] = c
    return {n: NcPoly(f.rank, f.field, t, _trusted=True) for n, t in parts.items()}


def linearize(f: NcPoly, var: int, k: int) -> dict:
    """Substitute var -> x_1 + ... + x_k with k fresh generators.

    The fresh generators get indices ``f.rank, ..., f.rank + k - 1`` in a
    polynomial of rank ``f.rank + k``.  Returns the components keyed by the
    exponent vector in the fresh generators.
    """
    if not 0 <= var < f.rank:
        raise ValueError(f"variable {var} outside rank {f.rank}")
    if k < 1:
        raise ValueError("k must be positive")
    r = f.rank
    fresh = range(r, r + k)
    parts = defaultdict(lambda: defaultdict(int))
    for w, c in f.terms.items():
        slots = [i for i, a in enumerate(w) if a == var]
        for choice in product(fresh, repeat=len(slots)):
            nw = list(w)
            for i, a in zip(slots, choice):
                nw[i] = a
            key = [0] * k
            for a in choice:
                key[a - r] += 1
            parts[tuple(key)][tuple(nw)] += c
    out = {}
    for key, t in parts.items():
        t = _clean(t, f.field)
        if t:
            out[key] = NcPoly(r + k, f.field, t, _trusted=True)
    return out


def delete_derivative(f: NcPoly, var: int) -> NcPoly:
    """Sum over occurrences of ``var`` of the word with that occurrence removed."""
    t = defaultdict(int)
    for w, c in f.terms.items():
        for i, a in enumerate(w):
            if a == var:
                t[w[:i] + w[i + 1:]] += c
    return NcPoly(f.rank, f.field, _clean(t, f.field), _trusted=True)


def unit_shift(f: NcPoly, var: int) -> NcPoly:
    g = NcPoly.gen(var, f.rank, f.field) + 1
    return substitute(f, {var: g}, rank=f.rank)


def is_proper(f: NcPoly) -> bool:
    """Proper polynomials are exactly those fixed by every shift x_i -> x_i + 1."""
    return all(unit_shift(f, i) == f for i in range(f.rank))


def rename(f: NcPoly, mapping: Sequence[int], rank: int | None = None) -> NcPoly:
    """Relabel letters: letter a becomes mapping[a]."""
    rank = rank if rank is not None else f.rank
    t = defaultdict(int)
    for w, c in f.terms.items():
        t[tuple(mapping[a] for a in w)] += c
    return NcPoly(rank, f.field, _clean(t, f.field), _trusted=True)


def words_poly(words: Iterable[Word], rank: int, field: FieldSpec = QQ) -> NcPoly:
    t = defaultdict(int)
    for w in words:
        t[tuple(w)] += 1
    return NcPoly(rank, field, _clean(t, field), _trusted=True)
