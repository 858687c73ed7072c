"""Closed-form model of F_2^(3) and the special polynomials f(q1, q2).

An element is u + c*v where c = [x, y] and u, v are commutative polynomials
in x, y.  In F_2^(3) the commutator c is central and c^2 = 0, and moving
y^b past x^c costs a single commutator:

    x^a y^b * x^c y^d = x^(a+c) y^(b+d) - b*c * c * x^(a+c-1) y^(b+d-1)

so the commutator ideal is one-dimensional in every bidegree.  Commutative
polynomials are dicts {(i, j): coeff}.

For a substitution x -> sum alpha_i u_i, y -> sum beta_j w_j of monomials the
multihomogeneous component of f(q1, q2) is L * f(r1, r2) with

    L = sum_{i,j} n_i m_j det(u_i, w_j) * (q1-1)!/prod n! * (q2-1)!/prod m!

which only depends on the multiplicities and the aggregate exponents
(A, B) = sum n_i (a_i, b_i), (C, D) = sum m_j (c_j, d_j).  The consequence
tester enumerates these aggregate classes; the formula itself is checked
against direct expansion in the model.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial, prod
from typing import Iterable, Sequence

from .freealg import NcPoly
from .scalars import QQ, FieldSpec, is_power_of

Mono = tuple  # (i, j): x^i y^j


# ---------------------------------------------------------------------------
# commutative polynomials in x, y


def cp_clean(p: dict, field: FieldSpec) -> dict:
    if not field.characteristic:
        return {k: c for k, c in p.items() if c}
    out = {}
    for k, c in p.items():
        c = field.coerce(c)
        if c:
            out[k] = c
    return out


def cp_add(p: dict, q: dict, field: FieldSpec, s=1) -> dict:
    out = dict(p)
    for k, c in q.items():
        out[k] = out.get(k, 0) + s * c
    return cp_clean(out, field)


def cp_mul(p: dict, q: dict, field: FieldSpec) -> dict:
    out = {}
    for (a, b), c1 in p.items():
        for (e, f), c2 in q.items():
            k = (a + e, b + f)
            out[k] = out.get(k, 0) + c1 * c2
    return cp_clean(out, field)


def cp_scale(p: dict, s, field: FieldSpec) -> dict:
    return cp_clean({k: s * c for k, c in p.items()}, field)


def cp_pow(p: dict, n: int, field: FieldSpec) -> dict:
    r = {(0, 0): field.one}
    for _ in range(n):
        r = cp_mul(r, p, field)
    return r


def cp_format(p: dict) -> str:
    if not p:
        return "0"
    parts = []
    for (a, b), c in sorted(p.items()):
        m = "*".join(s for s in ([f"x^{a}" if a > 1 else "x"] if a else []) +
                     ([f"y^{b}" if b > 1 else "y"] if b else []))
        if not m:
            parts.append(str(c))
        elif c == 1:
            parts.append(m)
        else:
            parts.append(f"({c})*{m}")
    return " + ".join(parts)


def _delta(p: dict, q: dict, field: FieldSpec) -> dict:
    """c-coefficient created by normal-ordering p * q (bilinear)."""
    out = {}
    for (a, b), c1 in p.items():
        for (e, f), c2 in q.items():
            if b and e:
                k = (a + e - 1, b + f - 1)
                out[k] = out.get(k, 0) - b * e * c1 * c2
    return cp_clean(out, field)


# ---------------------------------------------------------------------------
# the model


class F23Element:
    """u + [x, y] * v in F_2^(3)."""

    __slots__ = ("field", "u", "v")

    def __init__(self, u: dict | None = None, v: dict | None = None, field: FieldSpec = QQ):
        self.field = field
        self.u = cp_clean(u or {}, field)
        self.v = cp_clean(v or {}, field)

    @classmethod
    def _raw(cls, u: dict, v: dict, field: FieldSpec):
        e = cls.__new__(cls)
        e.field, e.u, e.v = field, u, v
        return e

    @classmethod
    def x(cls, field=QQ):
        return cls({(1, 0): 1}, None, field)

    @classmethod
    def y(cls, field=QQ):
        return cls({(0, 1): 1}, None, field)

    @classmethod
    def c(cls, field=QQ):
        return cls(None, {(0, 0): 1}, field)

    @classmethod
    def one(cls, field=QQ):
        return cls({(0, 0): 1}, None, field)

    @classmethod
    def monomial(cls, a: int, b: int, field=QQ):
        return cls({(a, b): 1}, None, field)

    def _chk(self, o):
        if not isinstance(o, F23Element):
            raise TypeError("expected an F23Element")
        if o.field != self.field:
            raise ValueError("mixed fields")

    def __add__(self, o):
        self._chk(o)
        return F23Element._raw(cp_add(self.u, o.u, self.field), cp_add(self.v, o.v, self.field), self.field)

    def __sub__(self, o):
        self._chk(o)
        return F23Element._raw(cp_add(self.u, o.u, self.field, -1), cp_add(self.v, o.v, self.field, -1), self.field)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s):
        return F23Element._raw(cp_scale(self.u, s, self.field), cp_scale(self.v, s, self.field), self.field)

    def __mul__(self, o):
        if not isinstance(o, F23Element):
            return self.scale(o)
        self._chk(o)
        F = self.field
        u = cp_mul(self.u, o.u, F)
        v = cp_add(cp_add(cp_mul(self.u, o.v, F), cp_mul(self.v, o.u, F), F), _delta(self.u, o.u, F), F)
        return F23Element._raw(u, v, F)

    __rmul__ = scale

    def __pow__(self, n: int):
        r = F23Element.one(self.field)
        for _ in range(n):
            r = r * self
        return r

    def __eq__(self, o):
        if not isinstance(o, F23Element):
            return NotImplemented
        return self.field == o.field and self.u == o.u and self.v == o.v

    def __hash__(self):
        return hash((self.field, tuple(sorted(self.u.items())), tuple(sorted(self.v.items()))))

    def is_zero(self):
        return not self.u and not self.v

    def __bool__(self):
        return not self.is_zero()

    def bidegrees(self) -> set:
        out = set(self.u)
        out |= {(a + 1, b + 1) for a, b in self.v}
        return out

    def to_field(self, field: FieldSpec):
        return F23Element(self.u, self.v, field)

    def to_ncpoly(self) -> NcPoly:
        """A representative in F_2: x^i y^j for u, [x, y] x^i y^j for c*v."""
        F = self.field
        terms = {}
        for (a, b), c in self.u.items():
            w = (0,) * a + (1,) * b
            terms[w] = terms.get(w, 0) + c
        for (a, b), c in self.v.items():
            tail = (0,) * a + (1,) * b
            for w, s in (((0, 1) + tail, 1), ((1, 0) + tail, -1)):
                terms[w] = terms.get(w, 0) + s * c
        return NcPoly(2, F, terms)

    def __repr__(self):
        return f"F23Element(u={cp_format(self.u)}, v={cp_format(self.v)}, {self.field})"


def f23_commutator(a: F23Element, b: F23Element) -> F23Element:
    return a * b - b * a


def word_image(w, field: FieldSpec = QQ) -> F23Element:
    """Normal form of a word in x (0) and y (1)."""
    a = sum(1 for t in w if t == 0)
    b = len(w) - a
    inv = 0
    ys = 0
    for t in w:
        if t == 1:
            ys += 1
        else:
            inv += ys
    v = {(a - 1, b - 1): -inv} if inv else {}
    return F23Element({(a, b): 1}, v, field)


def f23_reduce(f: NcPoly) -> F23Element:
    """Image of f under F_2 -> F_2^(3)."""
    if f.rank > 2:
        for w in f.terms:
            if any(t >= 2 for t in w):
                raise ValueError("f23_reduce needs a polynomial in x, y only")
    F = f.field
    u, v = {}, {}
    for w, c in f.terms.items():
        e = word_image(w, F)
        for k, s in e.u.items():
            u[k] = u.get(k, 0) + c * s
        for k, s in e.v.items():
            v[k] = v.get(k, 0) + c * s
    return F23Element(u, v, F)


def jacobian_monomial(m1: Mono, m2: Mono) -> tuple[int, Mono]:
    """[x^a y^b, x^c y^d] = det * c * x^(a+c-1) y^(b+d-1); returns (det, exponent)."""
    (a, b), (c, d) = m1, m2
    return a * d - b * c, (a + c - 1, b + d - 1)


# ---------------------------------------------------------------------------
# special polynomials


@dataclass(frozen=True)
class SpecialPoly:
    q1: int
    q2: int
    field: FieldSpec = QQ

    def __post_init__(self):
        if self.q1 < 1 or self.q2 < 1:
            raise ValueError("q1, q2 must be positive")

    @property
    def element(self) -> F23Element:
        return F23Element(None, {(self.q1 - 1, self.q2 - 1): 1}, self.field)

    @property
    def bidegree(self):
        return (self.q1, self.q2)

    def is_special(self) -> bool:
        p = self.field.characteristic
        return bool(p) and is_power_of(self.q1, p) and is_power_of(self.q2, p)

    def preceq(self, other: "SpecialPoly") -> bool:
        return self.q1 <= other.q1 and self.q2 <= other.q2

    def ncpoly(self) -> NcPoly:
        return self.element.to_ncpoly()

    def __str__(self):
        return f"f({self.q1},{self.q2})"


def special_poly(q1: int, q2: int, field: FieldSpec = QQ) -> SpecialPoly:
    return SpecialPoly(q1, q2, field)


def f_element(q1: int, q2: int, field: FieldSpec = QQ) -> F23Element:
    return SpecialPoly(q1, q2, field).element


# ---------------------------------------------------------------------------
# substitution patterns and the consequence coefficient


@dataclass(frozen=True)
class SubstitutionPattern:
    """x = sum alpha_i x^{a_i} y^{b_i} (part i of multiplicity n_i), same for y."""
    parts_x: tuple   # ((n_i, (a_i, b_i)), ...)
    parts_y: tuple

    @property
    def source(self):
        return (sum(n for n, _ in self.parts_x), sum(m for m, _ in self.parts_y))

    @property
    def aggregates(self):
        A = sum(n * a for n, (a, _) in self.parts_x)
        B = sum(n * b for n, (_, b) in self.parts_x)
        C = sum(m * c for m, (c, _) in self.parts_y)
        D = sum(m * d for m, (_, d) in self.parts_y)
        return (A, B), (C, D)

    @property
    def target(self):
        (A, B), (C, D) = self.aggregates
        return (A + C, B + D)

    def uses_unit(self) -> bool:
        return any(e == (0, 0) for _, e in self.parts_x + self.parts_y)

    def __str__(self):
        def side(parts, name):
            return " + ".join(f"{n}:x^{a}y^{b}" for n, (a, b) in parts)
        return f"x -> [{side(self.parts_x, 'x')}], y -> [{side(self.parts_y, 'y')}]"


def coefficient_from_classes(lam: Sequence[int], mu: Sequence[int], AB, CD) -> int:
    """Integer L for multiplicities lam, mu and aggregate exponents."""
    q1, q2 = sum(lam), sum(mu)
    det = AB[0] * CD[1] - AB[1] * CD[0]
    num = det * factorial(q1 - 1) * factorial(q2 - 1)
    den = prod(factorial(n) for n in lam) * prod(factorial(m) for m in mu)
    L = Fraction(num, den)
    if L.denominator != 1:
        raise ArithmeticError("consequence coefficient is not integral")
    return int(L)


def consequence_coefficient(pattern: SubstitutionPattern, q1: int, q2: int, field: FieldSpec = QQ):
    """L with eta(f(q1, q2)^sigma) = L * f(r1, r2)."""
    if pattern.source != (q1, q2):
        raise ValueError(f"pattern has source bidegree {pattern.source}, expected {(q1, q2)}")
    if any(n < 1 for n, _ in pattern.parts_x + pattern.parts_y):
        raise ValueError("multiplicities must be positive")
    L = coefficient_from_classes([n for n, _ in pattern.parts_x], [m for m, _ in pattern.parts_y],
                                 *pattern.aggregates)
    return field.coerce(L)


def formula_instance(pattern: SubstitutionPattern, q1: int, q2: int) -> F23Element:
    """L * f(r1, r2) over Q (zero when the target bidegree has a zero entry)."""
    L = consequence_coefficient(pattern, q1, q2, QQ)
    r1, r2 = pattern.target
    if r1 == 0 or r2 == 0:
        if L:
            raise ArithmeticError("nonzero coefficient outside the commutator ideal")
        return F23Element(None, None, QQ)
    return f_element(r1, r2, QQ).scale(L)


def direct_instance(pattern: SubstitutionPattern, q1: int, q2: int) -> F23Element:
    """The multihomogeneous component of f(q1, q2) under the pattern, over Q.

    Computed in the model only: the component of P(alpha, beta) =
    f(sum alpha_i U_i, sum beta_j W_j) with exponents (n, m) is recovered by
    inclusion-exclusion over the integer points s <= n, t <= m.
    """
    if pattern.source != (q1, q2):
        raise ValueError("pattern does not match the source bidegree")
    F = QQ
    U = [F23Element.monomial(a, b, F) for _, (a, b) in pattern.parts_x]
    W = [F23Element.monomial(c, d, F) for _, (c, d) in pattern.parts_y]
    ns = [n for n, _ in pattern.parts_x]
    ms = [m for m, _ in pattern.parts_y]
    total = F23Element(None, None, F)

    def lin(vals, elems):
        r = F23Element(None, None, F)
        for s, e in zip(vals, elems):
            if s:
                r = r + e.scale(s)
        return r

    ys = []
    for t in product(*[range(m + 1) for m in ms]):
        Y = lin(t, W)
        if Y:
            wt = prod(comb(m, k) for m, k in zip(ms, t)) * (-1) ** (q2 - sum(t))
            ys.append((wt, Y, Y ** (q2 - 1)))
    for s in product(*[range(n + 1) for n in ns]):
        X = lin(s, U)
        if not X:
            continue
        ws = prod(comb(n, k) for n, k in zip(ns, s)) * (-1) ** (q1 - sum(s))
        Xp = X ** (q1 - 1)
        for wt, Y, Yp in ys:
            val = f23_commutator(X, Y) * Xp * Yp
            total = total + val.scale(ws * wt)
    den = prod(factorial(n) for n in ns) * prod(factorial(m) for m in ms)
    return total.scale(Fraction(1, den))


# ---------------------------------------------------------------------------
# pattern enumeration


def _partitions(n: int, max_part=None, max_len=None):
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    if max_len == 0:
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - k, k, None if max_len is None else max_len - 1):
            yield (k,) + rest


def partitions(n: int, max_len=None) -> list:
    return list(_partitions(n, None, max_len))


def _side_patterns(lam, max_exp, allow_unit):
    """Exponent assignments to the parts of lam, canonical within equal parts."""
    exps = [(a, b) for a in range(max_exp + 1) for b in range(max_exp + 1)
            if allow_unit or (a, b) != (0, 0)]
    out = []

    def rec(i, acc):
        if i == len(lam):
            out.append(tuple(zip(lam, acc)))
            return
        for e in exps:
            if i and lam[i] == lam[i - 1] and e < acc[-1]:
                continue
            acc.append(e)
            rec(i + 1, acc)
            acc.pop()

    rec(0, [])
    return out


def enumerate_patterns(q1: int, q2: int, max_parts: int = 2, max_exp: int = 3,
                       allow_unit: bool = False, target=None) -> Iterable[SubstitutionPattern]:
    """All patterns with at most max_parts parts per side and exponents <= max_exp."""
    for lam in _partitions(q1, None, max_parts):
        xs = _side_patterns(lam, max_exp, allow_unit)
        for mu in _partitions(q2, None, max_parts):
            ys = _side_patterns(mu, max_exp, allow_unit)
            for px in xs:
                for py in ys:
                    pat = SubstitutionPattern(px, py)
                    if target is None or pat.target == tuple(target):
                        yield pat


def _representable(total: int, parts: Sequence[int], positive_mask=None) -> bool:
    """Is total = sum parts[i] * e_i with e_i >= 0?"""
    reach = _reach(tuple(parts), total)
    return total in reach


@lru_cache(maxsize=None)
def _reach(parts: tuple, bound: int) -> frozenset:
    reach = {0}
    for n in parts:
        new = set()
        for r in reach:
            for k in range(0, (bound - r) // n + 1):
                new.add(r + k * n)
        reach = new
    return frozenset(reach)


def _split_exponent(total: int, parts: Sequence[int]) -> list:
    """Some e with sum parts[i] * e_i == total (assumes representable)."""
    parts = list(parts)
    if not parts:
        return []
    n = parts[0]
    rest = parts[1:]
    for k in range(total // n, -1, -1):
        r = total - k * n
        if r == 0 and not rest:
            return [k]
        if rest and r in _reach(tuple(rest), r):
            return [k] + _split_exponent(r, rest)
    raise ValueError("not representable")


@dataclass
class ClassRecord:
    lam: tuple
    mu: tuple
    AB: tuple
    CD: tuple
    L: int


def aggregate_classes(q1: int, q2: int, r1: int, r2: int, allow_unit: bool = True):
    """All (lam, mu, (A,B), (C,D)) realised by some substitution into bidegree (r1, r2).

    With allow_unit False every part must receive a nonunit monomial.
    """
    for lam in _partitions(q1):
        for mu in _partitions(q2):
            for A in range(r1, -1, -1):
                C = r1 - A
                for B in range(r2, -1, -1):
                    D = r2 - B
                    if not (_side_ok(A, B, lam, allow_unit) and _side_ok(C, D, mu, allow_unit)):
                        continue
                    yield ClassRecord(lam, mu, (A, B), (C, D),
                                      coefficient_from_classes(lam, mu, (A, B), (C, D)))


def _side_ok(A, B, lam, allow_unit) -> bool:
    if allow_unit:
        return _representable(A, lam) and _representable(B, lam)
    return _nonunit_witness(A, B, tuple(lam)) is not None


@lru_cache(maxsize=None)
def _nonunit_witness(A: int, B: int, lam: tuple):
    """Exponents (a_i, b_i) != (0, 0) with sum n_i (a_i, b_i) = (A, B), or None."""
    if not lam:
        return () if A == 0 and B == 0 else None
    n, rest = lam[0], lam[1:]
    for a in range(A // n, -1, -1):
        for b in range(B // n, -1, -1):
            if (a, b) == (0, 0):
                continue
            tail = _nonunit_witness(A - n * a, B - n * b, rest)
            if tail is not None:
                return ((a, b),) + tail
    return None


def realise_class(rec: ClassRecord, allow_unit: bool = True) -> SubstitutionPattern:
    """A concrete pattern in the given class."""
    def side(lam, A, B):
        if not allow_unit:
            ex = _nonunit_witness(A, B, tuple(lam))
        else:
            ex = list(zip(_split_exponent(A, lam), _split_exponent(B, lam)))
        return tuple(zip(lam, ex))
    return SubstitutionPattern(side(rec.lam, *rec.AB), side(rec.mu, *rec.CD))


# ---------------------------------------------------------------------------
# T-consequences inside F_2^(3)


@dataclass
class ConsequenceResult:
    is_consequence: bool
    witness: object = None                   # (generator index, pattern, L)
    certificate: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.is_consequence


def _as_element(g, field: FieldSpec) -> F23Element:
    if isinstance(g, F23Element):
        return g.to_field(field)
    if isinstance(g, SpecialPoly):
        return F23Element(None, {(g.q1 - 1, g.q2 - 1): 1}, field)
    if isinstance(g, NcPoly):
        return f23_reduce(g.to_field(field))
    if isinstance(g, dict):
        return F23Element(g, None, field)
    raise TypeError(f"cannot use {type(g).__name__} as a generator")


def tconsequence(target, generators, field: FieldSpec = QQ, allow_unit: bool = True,
                 max_classes: int = 5_000_000) -> ConsequenceResult:
    """Is target in the T-space of F_2^(3) generated by the generators?

    Generators must lie in the commutator ideal (u = 0); each homogeneous
    piece is then a multiple of some f(q1, q2) and the closed coefficient
    formula applies.  Generators with a commutative part go through
    :func:`tconsequence_general`.
    """
    from .tgrade import CapExceeded
    tgt = _as_element(target, field)
    if tgt.is_zero():
        return ConsequenceResult(True, None, {"reason": "zero target"})
    if tgt.u or len(tgt.v) != 1:
        raise ValueError("target must be a single multiple of some f(r1, r2)")
    (r1m, r2m), = tgt.v
    r1, r2 = r1m + 1, r2m + 1
    gens = [_as_element(g, field) for g in generators]
    if any(g.u for g in gens):
        return tconsequence_general(tgt, gens, field)
    p = field.characteristic
    classes = 0
    seen = 0
    for gi, g in enumerate(gens):
        for (a, b), coef in sorted(g.v.items()):
            q1, q2 = a + 1, b + 1
            if not allow_unit and (q1 > r1 or q2 > r2):
                continue
            seen += 1
            records = (_grouped_classes(q1, q2, r1, r2, p) if allow_unit
                       else aggregate_classes(q1, q2, r1, r2, False))
            for rec in records:
                classes += 1
                if classes > max_classes:
                    raise CapExceeded("too many aggregate classes")
                L = rec.L * (int(coef) if p else 1)
                if p:
                    L %= p
                if L:
                    pat = realise_class(rec, allow_unit)
                    return ConsequenceResult(True, (gi, (q1, q2), pat, rec.L),
                                             {"classes_checked": classes})
    return ConsequenceResult(False, None, {"classes_checked": classes, "generator_pieces": seen,
                                           "target": (r1, r2)})


def _class_factor(lam) -> Fraction:
    q = sum(lam)
    return Fraction(factorial(q - 1), prod(factorial(n) for n in lam))


def _vp(x: Fraction, p: int) -> int:
    from .scalars import p_adic_valuation
    return p_adic_valuation(abs(x.numerator), p) - p_adic_valuation(x.denominator, p)


def _lam_groups(q: int, r: int, p: int) -> list:
    """Representative partitions of q for unit-allowed substitutions.

    With the unit allowed, the aggregate exponents reachable by a partition
    depend only on the numerical semigroup its parts generate (cut at r), and
    L = det * factor(lam) * factor(mu).  Keeping, per semigroup, a partition
    whose factor has the least p-adic valuation loses no class with L != 0.
    """
    best = {}
    for lam in _partitions(q):
        key = _reach(tuple(sorted(set(lam))), r)
        v = _vp(_class_factor(lam), p) if p else 0
        if key not in best or v < best[key][0]:
            best[key] = (v, lam)
    return [lam for _, lam in best.values()]


def _grouped_classes(q1, q2, r1, r2, p):
    lx = _lam_groups(q1, r1, p)
    ly = _lam_groups(q2, r2, p)
    for lam in lx:
        for mu in ly:
            for A in range(r1, -1, -1):
                C = r1 - A
                if not (_representable(A, lam) and _representable(C, mu)):
                    continue
                for B in range(r2, -1, -1):
                    D = r2 - B
                    if not (_representable(B, lam) and _representable(D, mu)):
                        continue
                    yield ClassRecord(lam, mu, (A, B), (C, D),
                                      coefficient_from_classes(lam, mu, (A, B), (C, D)))


def verify_witness(res: ConsequenceResult, field: FieldSpec) -> bool:
    """Recompute a witness by direct expansion in the model."""
    if not res.is_consequence or res.witness is None:
        return False
    _, (q1, q2), pat, L = res.witness
    inst = direct_instance(pat, q1, q2)
    return inst == formula_instance(pat, q1, q2) and field.coerce(L) != 0


def tconsequence_general(target: F23Element, generators, field: FieldSpec,
                         caps=None) -> ConsequenceResult:
    """Fallback through graded T-spaces in F_2 modulo T^(3) (small degrees only)."""
    from .tgrade import DEFAULT_CAPS, commutator_tideal, tspace_component
    caps = caps or DEFAULT_CAPS
    t = target.to_ncpoly()
    d = t.the_multidegree()
    gens = [g.to_ncpoly() for g in generators]
    span = tspace_component(gens, 2, d, field, caps) + commutator_tideal(3, 2, d, field, caps)
    ok = span.contains(t)
    return ConsequenceResult(ok, ("tgrade", d) if ok else None, {"span_dim": span.dim})


# ---------------------------------------------------------------------------
# the commutative T-space of x^q


def comm_tspace_contains(target: Mono, q: int, p: int) -> bool:
    """Is x^i y^j in the T-space of K[x, y] generated by x^q (q a power of p)?"""
    if p < 5:
        raise ValueError("p must be at least 5")
    if not is_power_of(q, p) and q != 1:
        raise ValueError("q must be a power of p")
    i, j = target
    return i % q == 0 and j % q == 0


def comm_tspace_spanning(target: Mono, q: int, p: int) -> bool:
    """Same question answered by substituting monomials into linearizations of x^q.

    The component of (t_1 + ... + t_k)^q with exponents lam is computed by
    expanding the power explicitly, then each t_i is replaced by a monomial
    (the unit allowed); the target is reached iff some such instance is
    nonzero mod p.
    """
    FieldSpec(p)
    i, j = target
    if (i, j) == (0, 0):
        return True
    for lam in _partitions(q):
        coeff = _lin_coefficient(q, lam, p)
        if coeff == 0:
            continue
        if _representable(i, lam) and _representable(j, lam):
            return True
    return False


@lru_cache(maxsize=None)
def _lin_coefficient(q: int, lam: tuple, p: int) -> int:
    # expand (t_1 + ... + t_k)^q as a dict over exponent vectors
    k = len(lam)
    poly = {(0,) * k: 1}
    for _ in range(q):
        new = {}
        for e, c in poly.items():
            for s in range(k):
                f = list(e)
                f[s] += 1
                f = tuple(f)
                if f[s] <= lam[s]:
                    new[f] = (new.get(f, 0) + c) % p
        poly = new
    return poly.get(tuple(lam), 0) % p


# ---------------------------------------------------------------------------
# arithmetic behind the ideal chain


def theorem6_solve(s: int, p: int) -> tuple[int, int]:
    """(i, j) with i + j - 2 = s, i, j >= 1 and neither divisible by p."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    if s % p:
        return 2, s
    return 1, s + 1
