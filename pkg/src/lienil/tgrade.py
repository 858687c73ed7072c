"""Graded components of T-ideals and T-spaces, centers, products.

Everything is computed one multidegree at a time.  The field is treated as
infinite: a T-space component is spanned by the values of all multihomogeneous
partial linearizations of the generators at tuples of monomials (the unit
included), and a T-ideal component adds left and right multiples by letters
of the next-lower components.

For the commutator generators [x1, ..., xn] there is a faster recursion,
resting only on bilinearity and the Leibniz rule:

    V^(n)(d) = sum_w [V^(n-1)(d - deg w), w]            (w nonempty words)
    T^(n)(d) = sum_y [V^(n-1)(d - e_y), y] + y T^(n)(d - e_y) + T^(n)(d - e_y) y

It is checked against the general route in the test suite.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from . import components as C
from .components import Component, add_deg, component, sub_deg, unit
from .freealg import NcPoly, linearize, multihomo_split, right_normed
from .linalg import RowSpace, left_kernel, primitive_integer_row
from .scalars import QQ, FieldSpec


class CapExceeded(RuntimeError):
    """A resource cap stopped the computation before the span was complete."""


@dataclass
class Caps:
    max_total_degree: int = 14
    max_substitutions: int = 400_000


DEFAULT_CAPS = Caps()


class GradedSpan:
    """Canonical subspace of the multidegree-d component of F_rank."""

    __slots__ = ("rank", "field", "multidegree", "space")

    def __init__(self, rank: int, field: FieldSpec, d, space: RowSpace):
        self.rank = rank
        self.field = field
        self.multidegree = tuple(d)
        self.space = space

    @classmethod
    def from_rows(cls, rank, field, d, rows):
        comp = component(rank, tuple(d))
        return cls(rank, field, d, RowSpace.from_rows(field, comp.size, rows))

    @classmethod
    def from_polys(cls, rank, field, d, polys: Iterable[NcPoly]):
        comp = component(rank, tuple(d))
        return cls.from_rows(rank, field, d, [comp.int_vector(f) for f in polys if f])

    @classmethod
    def zero(cls, rank, field, d):
        return cls(rank, field, d, RowSpace.zero(field, component(rank, tuple(d)).size))

    @classmethod
    def full(cls, rank, field, d):
        return cls(rank, field, d, RowSpace.full(field, component(rank, tuple(d)).size))

    @property
    def component(self) -> Component:
        return component(self.rank, self.multidegree)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def matrix(self) -> list[list]:
        return self.space.rref_rows()

    @property
    def pivots(self) -> list[int]:
        return [int(j) for j in self.space.pivots]

    def basis(self) -> list[NcPoly]:
        comp = self.component
        return [comp.poly(r, self.field) for r in self.matrix]

    def generator_rows(self) -> np.ndarray:
        return self.space.integer_rows()

    def generator_polys(self) -> list[NcPoly]:
        comp = self.component
        return [comp.poly([self.field.coerce(int(v)) for v in r], self.field)
                for r in self.generator_rows()]

    def _key_check(self, other: "GradedSpan"):
        if (other.rank, other.field, other.multidegree) != (self.rank, self.field, self.multidegree):
            raise ValueError("spans live in different components")

    def contains(self, f: NcPoly) -> bool:
        if f.rank != self.rank:
            f = f.with_rank(self.rank)
        if f.field != self.field:
            f = f.to_field(self.field)
        if f.is_zero():
            return True
        if f.the_multidegree() != self.multidegree:
            raise ValueError(f"polynomial has multidegree {f.the_multidegree()}, span has {self.multidegree}")
        return self.space.contains(self.component.int_vector(f))

    def contains_rows(self, rows) -> np.ndarray:
        return self.space.contains_rows(rows)

    def leq(self, other: "GradedSpan") -> bool:
        self._key_check(other)
        return self.space.leq(other.space)

    def __le__(self, other):
        return self.leq(other)

    def __eq__(self, other):
        if not isinstance(other, GradedSpan):
            return NotImplemented
        return (self.rank, self.field, self.multidegree) == (other.rank, other.field, other.multidegree) \
            and self.space == other.space

    __hash__ = None

    def __add__(self, other: "GradedSpan") -> "GradedSpan":
        self._key_check(other)
        return GradedSpan(self.rank, self.field, self.multidegree, self.space + other.space)

    def first_outside(self, other: "GradedSpan"):
        """A basis polynomial of self not in other, or None."""
        rows = self.generator_rows()
        if len(rows) == 0:
            return None
        mask = other.contains_rows(rows)
        bad = np.flatnonzero(~mask)
        if bad.size == 0:
            return None
        comp = self.component
        return comp.poly([self.field.coerce(int(v)) for v in rows[bad[0]]], self.field)

    def __repr__(self):
        return f"GradedSpan(rank={self.rank}, d={self.multidegree}, dim={self.dim}, {self.field})"


def span_leq(a: GradedSpan, b: GradedSpan) -> bool:
    return a.leq(b)


def span_equal(a: GradedSpan, b: GradedSpan) -> bool:
    a._key_check(b)
    return a == b


def contains(s: GradedSpan, f: NcPoly) -> bool:
    return s.contains(f)


def monomials(rank: int, d) -> list:
    return list(C.monomials(rank, tuple(d)))


def _field(p: int) -> FieldSpec:
    return FieldSpec(p)


def _check_degree(d, caps: Caps):
    if sum(d) > caps.max_total_degree:
        raise CapExceeded(f"total degree {sum(d)} exceeds cap {caps.max_total_degree}")


def _stack(blocks, ncols):
    blocks = [b for b in blocks if b.shape[0]]
    if not blocks:
        return np.zeros((0, ncols), np.int64)
    if any(b.dtype == object for b in blocks):
        return np.vstack([b.astype(object) for b in blocks])
    return np.vstack(blocks)


# ---------------------------------------------------------------------------
# commutator T-spaces and T-ideals (fast recursion)


@lru_cache(maxsize=None)
def _V(n: int, rank: int, d: tuple, p: int) -> RowSpace:
    field = _field(p)
    comp = component(rank, d)
    total = sum(d)
    if n == 1:
        return RowSpace.full(field, comp.size)
    if total < n:
        return RowSpace.zero(field, comp.size)
    blocks = []
    for e in C.sub_multidegrees(d):
        if sum(e) == 0 or sum(e) == total:
            continue
        dp = sub_deg(d, e)
        if sum(dp) < n - 1:
            continue
        low = _V(n - 1, rank, dp, p)
        if low.dim:
            blocks.append(C.commutator_with_words(low.gens, dp, e, rank, p))
    return RowSpace.from_rows(field, comp.size, _stack(blocks, comp.size))


@lru_cache(maxsize=None)
def _T(n: int, rank: int, d: tuple, p: int) -> RowSpace:
    field = _field(p)
    comp = component(rank, d)
    if n <= 1:
        return RowSpace.full(field, comp.size)
    if sum(d) < n:
        return RowSpace.zero(field, comp.size)
    blocks = []
    for y in range(rank):
        dp = sub_deg(d, unit(rank, y))
        if dp is None:
            continue
        low = _V(n - 1, rank, dp, p)
        if low.dim:
            blocks.append(C.letter_commutator(low.gens, dp, y, rank, p))
        same = _T(n, rank, dp, p)
        if same.dim:
            blocks.append(C.letter_left(same.gens, dp, y, rank, p))
            blocks.append(C.letter_right(same.gens, dp, y, rank, p))
    return RowSpace.from_rows(field, comp.size, _stack(blocks, comp.size))


def commutator_tideal(n: int, rank: int, d, field: FieldSpec = QQ, caps: Caps = DEFAULT_CAPS) -> GradedSpan:
    """T^(n) at multidegree d."""
    d = tuple(d)
    _check_degree(d, caps)
    return GradedSpan(rank, field, d, _T(n, rank, d, field.characteristic))


def commutator_tspace(n: int, rank: int, d, field: FieldSpec = QQ, caps: Caps = DEFAULT_CAPS) -> GradedSpan:
    """V^(n) at multidegree d."""
    d = tuple(d)
    _check_degree(d, caps)
    return GradedSpan(rank, field, d, _V(n, rank, d, field.characteristic))


def commutator_poly(n: int, field: FieldSpec = QQ) -> NcPoly:
    """[x1, ..., xn] in rank n."""
    return right_normed(*NcPoly.gens(n, field))


# ---------------------------------------------------------------------------
# general generators


def _partitions(n: int, max_part=None):
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


@lru_cache(maxsize=None)
def _linearizations(g: NcPoly) -> tuple:
    """Partial linearizations of a multihomogeneous g.

    Returns tuples (multiplicities, groups, poly) where poly lives in rank
    len(multiplicities) with one fresh generator per part, and groups[s]
    names the original variable and part size of slot s.  A multilinear g
    has exactly one entry, g itself.
    """
    delta = g.the_multidegree()
    vars_ = [i for i, k in enumerate(delta) if k]
    out = []
    choices = [list(_partitions(delta[i])) for i in vars_]
    for parts in product(*choices):
        f = g
        # linearize each variable in turn; fresh generators are appended
        for i, lam in zip(vars_, parts):
            if len(lam) == 1:
                continue
            f = linearize(f, i, len(lam)).get(tuple(lam))
            if f is None:
                break
        else:
            slots = []
            fresh = g.rank
            for i, lam in zip(vars_, parts):
                if len(lam) == 1:
                    slots.append((i, (i, lam[0])))
                else:
                    for k in lam:
                        slots.append((fresh, (i, k)))
                        fresh += 1
            mapping = {a: j for j, (a, _) in enumerate(slots)}
            terms = {tuple(mapping[a] for a in w): c for w, c in f.terms.items()}
            groups = tuple(gk for _, gk in slots)
            out.append((tuple(k for _, (_, k) in slots), groups,
                        NcPoly(len(slots), g.field, terms, _trusted=True)))
    return tuple(out)


def _degree_assignments(mult, groups, d):
    """Multidegrees m_s for each slot with sum_s mult[s] * m_s = d.

    Slots in the same group are interchangeable (the linearization is
    symmetric in them), so only nonincreasing runs within a group are kept.
    """
    res = []

    def rec(s, rem, acc):
        if s == len(mult):
            if not any(rem):
                res.append(tuple(acc))
            return
        k = mult[s]
        bound = acc[-1] if s and groups[s] == groups[s - 1] else None
        for m in C.sub_multidegrees(rem):
            if bound is not None and m > bound:
                continue
            if all(k * a <= b for a, b in zip(m, rem)):
                acc.append(m)
                rec(s + 1, tuple(b - k * a for a, b in zip(m, rem)), acc)
                acc.pop()

    rec(0, tuple(d), [])
    return res


def _instance_rows(lin: NcPoly, mult, groups, rank, d, p, budget: list) -> list:
    """Rows of lin(u_1, ..., u_K) for all monomial tuples of the right degrees."""
    tgt = component(rank, d)
    items = list(lin.terms.items())
    if p:
        coeffs = np.array([int(c) for _, c in items], np.int64)
    else:
        coeffs = np.array(primitive_integer_row([c for _, c in items]), dtype=object)
        if np.abs(coeffs).max() < 2**40:
            coeffs = coeffs.astype(np.int64)
    W = np.array([w for w, _ in items], np.int64).reshape(len(items), -1)
    rows = []
    for assign in _degree_assignments(mult, groups, d):
        comps = [component(rank, m) for m in assign]
        count = 1
        for cpt in comps:
            count *= cpt.size
        budget[0] -= count
        if budget[0] < 0:
            raise CapExceeded("substitution budget exhausted")
        grids = np.meshgrid(*[cpt.codes for cpt in comps], indexing="ij")
        G = np.stack([g.ravel() for g in grids])               # slots x count
        scale = np.array([rank ** cpt.n for cpt in comps], np.int64)
        code = np.zeros((W.shape[0], count), np.int64)
        for i in range(W.shape[1]):
            code = code * scale[W[:, i]][:, None] + G[W[:, i]]
        cols = tgt.index_of_codes(code)                        # terms x count
        flat = (np.arange(count)[None, :] * tgt.size + cols).ravel()
        wts = np.broadcast_to(coeffs[:, None], cols.shape).ravel()
        if coeffs.dtype == object:
            M = np.zeros(count * tgt.size, dtype=object)
            np.add.at(M, flat, wts)
        else:
            M = np.bincount(flat, weights=wts.astype(np.float64), minlength=count * tgt.size)
            M = np.rint(M).astype(np.int64)
        M = M.reshape(count, tgt.size)
        if p:
            M %= p
        rows.append(M)
    return rows


def _gen_key(generators) -> tuple:
    return tuple(generators)


@lru_cache(maxsize=None)
def _tspace_cached(gens: tuple, rank: int, d: tuple, p: int, max_subs: int) -> RowSpace:
    field = _field(p)
    comp = component(rank, d)
    budget = [max_subs]
    blocks = []
    for g in gens:
        for delta, part in multihomo_split(g).items():
            if sum(delta) == 0:
                if sum(d) == 0:
                    blocks.append(np.ones((1, 1), np.int64))
                continue
            for mult, groups, lin in _linearizations(part):
                blocks.extend(_instance_rows(lin, mult, groups, rank, d, p, budget))
    return RowSpace.from_rows(field, comp.size, _stack(blocks, comp.size))


def _prep(generators, field):
    out = []
    for g in generators:
        if g.field != field:
            g = g.to_field(field)
        out.append(g)
    return tuple(out)


def tspace_component(generators: Sequence[NcPoly], rank: int, d, field: FieldSpec = QQ,
                     caps: Caps = DEFAULT_CAPS) -> GradedSpan:
    """Multidegree-d component of the T-space generated by the generators."""
    d = tuple(d)
    _check_degree(d, caps)
    gens = _prep(generators, field)
    return GradedSpan(rank, field, d, _tspace_cached(gens, rank, d, field.characteristic,
                                                     caps.max_substitutions))


@lru_cache(maxsize=None)
def _tideal_cached(gens: tuple, rank: int, d: tuple, p: int, max_subs: int) -> RowSpace:
    field = _field(p)
    comp = component(rank, d)
    blocks = [_tspace_cached(gens, rank, d, p, max_subs).gens]
    for y in range(rank):
        dp = sub_deg(d, unit(rank, y))
        if dp is None:
            continue
        low = _tideal_cached(gens, rank, dp, p, max_subs)
        if low.dim:
            blocks.append(C.letter_left(low.gens, dp, y, rank, p))
            blocks.append(C.letter_right(low.gens, dp, y, rank, p))
    return RowSpace.from_rows(field, comp.size, _stack(blocks, comp.size))


def tideal_component(generators: Sequence[NcPoly], rank: int, d, field: FieldSpec = QQ,
                     caps: Caps = DEFAULT_CAPS) -> GradedSpan:
    """Multidegree-d component of the T-ideal generated by the generators."""
    d = tuple(d)
    _check_degree(d, caps)
    gens = _prep(generators, field)
    return GradedSpan(rank, field, d, _tideal_cached(gens, rank, d, field.characteristic,
                                                     caps.max_substitutions))


# ---------------------------------------------------------------------------
# products, centers, proper ideals


def product_span(a: GradedSpan, b: GradedSpan) -> GradedSpan:
    if a.rank != b.rank or a.field != b.field:
        raise ValueError("product of spans needs a common rank and field")
    d = add_deg(a.multidegree, b.multidegree)
    p = a.field.characteristic
    rows = C.block_products(a.generator_rows(), a.multidegree, b.generator_rows(), b.multidegree, a.rank, p)
    return GradedSpan.from_rows(a.rank, a.field, d, rows)


def product_rows(a: GradedSpan, b: GradedSpan) -> np.ndarray:
    """All pairwise products of the generating rows (not reduced)."""
    p = a.field.characteristic
    return C.block_products(a.generator_rows(), a.multidegree, b.generator_rows(), b.multidegree, a.rank, p)


def centralizer_component(ideal, rank: int, d, field: FieldSpec = QQ) -> GradedSpan:
    """{f of multidegree d : [f, x_j] in ideal(d + e_j) for every generator x_j}.

    ``ideal`` maps a multidegree to the GradedSpan of the ideal there.
    """
    d = tuple(d)
    comp = component(rank, d)
    p = field.characteristic
    blocks = []
    I = np.eye(comp.size, dtype=np.int64)
    for j in range(rank):
        dj = add_deg(d, unit(rank, j))
        Cj = C.letter_commutator(I, d, j, rank, p)
        blocks.append(ideal(dj).space.residues(Cj))
    K = left_kernel(field, blocks, comp.size)
    return GradedSpan.from_rows(rank, field, d, K)


def center_component(n: int, rank: int, d, field: FieldSpec = QQ, caps: Caps = DEFAULT_CAPS) -> GradedSpan:
    """Preimage in F_rank of the multidegree-d part of Z(F_rank^(n))."""
    if rank not in (2, 3):
        raise ValueError("centers are computed for ranks 2 and 3")
    d = tuple(d)
    _check_degree(add_deg(d, (1,) + (0,) * (rank - 1)), caps)
    return centralizer_component(lambda e: commutator_tideal(n, rank, e, field, caps), rank, d, field)


@lru_cache(maxsize=None)
def _proper_ideal(m: int, rank: int, d: tuple, p: int) -> RowSpace:
    from .pbw import proper_rows
    field = _field(p)
    comp = component(rank, d)
    blocks = []
    if sum(d) >= max(m, 2):
        blocks.append(proper_rows(rank, d) % p if p else proper_rows(rank, d))
    for y in range(rank):
        dp = sub_deg(d, unit(rank, y))
        if dp is None:
            continue
        low = _proper_ideal(m, rank, dp, p)
        if low.dim:
            blocks.append(C.letter_left(low.gens, dp, y, rank, p))
            blocks.append(C.letter_right(low.gens, dp, y, rank, p))
    return RowSpace.from_rows(field, comp.size, _stack(blocks, comp.size))


def proper_ideal_component(m: int, rank: int, d, field: FieldSpec = QQ, caps: Caps = DEFAULT_CAPS) -> GradedSpan:
    """Ideal generated by proper polynomials of degree >= m, at multidegree d."""
    if rank > 3:
        raise ValueError("proper ideals are computed for rank <= 3")
    d = tuple(d)
    _check_degree(d, caps)
    return GradedSpan(rank, field, d, _proper_ideal(m, rank, d, field.characteristic))


def weight_span(n: int, rank: int, d, field: FieldSpec = QQ, tiebreak: str = "lex") -> GradedSpan:
    """Span of the correct words of multidegree d with weight >= n."""
    from .pbw import weight_span_rows
    d = tuple(d)
    rows = weight_span_rows(rank, d, n, tiebreak)
    return GradedSpan.from_rows(rank, field, d, rows)


def multidegrees(rank: int, total: int) -> list:
    """All multidegrees of the given total degree, in lexicographic order."""
    out = []

    def rec(i, rem, acc):
        if i == rank - 1:
            out.append(tuple(acc + [rem]))
            return
        for k in range(rem, -1, -1):
            rec(i + 1, rem - k, acc + [k])

    if rank == 0:
        return [()]
    rec(0, total, [])
    return out


def multidegrees_upto(rank: int, max_total: int, min_total: int = 1) -> list:
    return [d for t in range(min_total, max_total + 1) for d in multidegrees(rank, t)]


def clear_caches():
    for f in (_V, _T, _tspace_cached, _tideal_cached, _proper_ideal, _linearizations):
        f.cache_clear()
