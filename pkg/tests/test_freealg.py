from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lienil.freealg import (NcPoly, apply_operator_word, commutator, delete_derivative, is_proper,
                            linearize, multihomo_component, multihomo_split, right_normed, substitute)
from lienil.polytext import ParseError, format_poly, parse_poly
from lienil.scalars import GF, QQ

x, y, z = NcPoly.gens(3)
X2, Y2 = NcPoly.gens(2)


def P(s, rank=3, field=QQ):
    return parse_poly(s, rank, field)


def test_arith_examples():
    assert x * y == NcPoly.monomial((0, 1), 3)
    assert (x + 1) * (x - 1) == x * x - 1
    assert (x + y) ** 2 == x * x + x * y + y * x + y * y
    with pytest.raises(ValueError):
        x + X2
    with pytest.raises(ValueError):
        x + NcPoly.gen(0, 3, GF(5))


def test_commutator_examples():
    assert commutator(x, y) == x * y - y * x
    assert commutator(x, x).is_zero()
    assert (commutator(x * y, z) - commutator(x, y * z) - commutator(y, z * x)).is_zero()
    assert right_normed(x, y, z) == commutator(commutator(x, y), z)
    assert right_normed(x, x, y).is_zero()
    with pytest.raises(ValueError):
        right_normed(x)


def test_substitute_examples():
    c = commutator(X2, Y2)
    assert substitute(c, {0: X2 * X2}) == commutator(X2 * X2, Y2)
    assert substitute(c, {1: NcPoly.one(2)}).is_zero()
    assert substitute(X2 * Y2, {0: X2 + 1}) == X2 * Y2 + Y2


def test_multihomo_examples():
    f = (X2 + Y2) ** 2
    assert multihomo_component(f, (1, 1)) == X2 * Y2 + Y2 * X2
    assert multihomo_component(X2 * X2 + X2 * Y2, (2, 0)) == X2 * X2
    assert set(multihomo_split(f)) == {(2, 0), (1, 1), (0, 2)}


def test_linearize_examples():
    parts = linearize(X2 * X2, 0, 2)
    a, b = NcPoly.gen(2, 4), NcPoly.gen(3, 4)
    assert parts[(1, 1)] == a * b + b * a
    f = commutator(X2, Y2) * X2
    yy = NcPoly.gen(1, 4)
    assert linearize(f, 0, 2)[(1, 1)] == commutator(a, yy) * b + commutator(b, yy) * a
    parts = linearize(X2, 0, 3)
    assert sorted(parts) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    with pytest.raises(ValueError):
        linearize(X2, 5, 2)


def _delete_oracle(f, var):
    out = {}
    for w, c in f.terms.items():
        for i, a in enumerate(w):
            if a == var:
                k = w[:i] + w[i + 1:]
                out[k] = out.get(k, 0) + c
    return NcPoly(f.rank, f.field, out)


def test_delete_derivative_examples():
    assert delete_derivative(X2 * Y2 * X2, 0) == Y2 * X2 + X2 * Y2
    assert delete_derivative(Y2 * Y2, 0).is_zero()
    f = commutator(X2, Y2) * X2
    assert delete_derivative(f, 0) == _delete_oracle(f, 0)
    # the x-degree drops by one
    assert delete_derivative(f, 0).the_multidegree() == (1, 1)


def test_is_proper_examples():
    c = commutator(X2, Y2)
    assert is_proper(c)
    assert not is_proper(X2)
    assert is_proper(c * c)
    assert not is_proper(c * X2)


def test_operator_examples():
    assert apply_operator_word(x, [("D", y)]) == commutator(x, y)
    assert apply_operator_word(x, [("D", y), ("D", z)]) == right_normed(x, y, z)
    with pytest.raises(ValueError):
        apply_operator_word(x, [("Q", y)])


# -- random polynomials ------------------------------------------------------

def polys(rank=3, max_deg=4, field=QQ):
    word = st.lists(st.integers(0, rank - 1), max_size=max_deg).map(tuple)
    return st.dictionaries(word, st.integers(-4, 4), max_size=5).map(lambda t: NcPoly(rank, field, t))


@settings(max_examples=40, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert a * NcPoly.one(3) == a


@settings(max_examples=40, deadline=None)
@given(polys(field=GF(5)), polys(field=GF(5)), polys(field=GF(5)), polys(field=GF(5)), polys(field=GF(5)))
def test_commutator_identities(a, b, c, u, v):
    ab = a * b
    assert commutator(ab, c) == commutator(a, b * c) + commutator(b, c * a)
    assert commutator(ab, c) == a * commutator(b, c) + commutator(a, c) * b
    lhs = right_normed(ab, u, v)
    rhs = (right_normed(a, u, v) * b + a * right_normed(b, u, v)
           + commutator(a, v) * commutator(b, u) + commutator(a, u) * commutator(b, v))
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(polys(), polys(), polys())
def test_operator_identities(t, a, b):
    R = lambda s, *ops: apply_operator_word(s, list(ops))
    assert R(t, ("R", a * b)) == R(t, ("R", a), ("R", b))
    assert R(t, ("D", a * b)) == R(t, ("R", a), ("D", b)) + R(t, ("L", b), ("D", a))
    assert R(t, ("L", a)) == R(t, ("R", a)) - R(t, ("D", a))


@settings(max_examples=40, deadline=None)
@given(polys())
def test_split_sums_back(f):
    parts = multihomo_split(f)
    total = NcPoly.zero(3)
    for d, g in parts.items():
        assert multihomo_component(g, d) == g
        total = total + g
    assert total == f


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_delete_derivative_linear(f, g):
    assert delete_derivative(f + g, 1) == delete_derivative(f, 1) + delete_derivative(g, 1)
    assert delete_derivative(f, 1) == _delete_oracle(f, 1)


@settings(max_examples=30, deadline=None)
@given(polys(rank=2, max_deg=3), polys(rank=2, max_deg=2), polys(rank=2, max_deg=2))
def test_substitution_is_homomorphism(f, a, b):
    img = {0: a, 1: b}
    assert substitute(f * f, img) == substitute(f, img) * substitute(f, img)


def test_full_linearization_is_multilinearization():
    f = X2 * X2 * Y2 * X2
    parts = linearize(f, 0, 3)
    ml = parts[(1, 1, 1)]
    # brute force: sum over all orderings of the three fresh letters
    expect = NcPoly.zero(5)
    for perm in [(2, 3, 4), (2, 4, 3), (3, 2, 4), (3, 4, 2), (4, 2, 3), (4, 3, 2)]:
        expect = expect + NcPoly.monomial((perm[0], perm[1], 1, perm[2]), 5)
    assert ml == expect


# -- text grammar ----------------------------------------------------------------

def test_parse_examples():
    f = parse_poly("2*[x,y]*x^4*y^4 - (1/3)*x*y")
    c = commutator(X2, Y2)
    assert f == c * X2 ** 4 * Y2 ** 4 * 2 - (X2 * Y2).scale(Fraction(1, 3))
    assert P("[x,y,z]") == right_normed(x, y, z)
    assert parse_poly("x1*x3").rank == 3
    assert P("(x+1)^2") == x * x + x * 2 + 1


@pytest.mark.parametrize("bad", ["x+", "[x]", "x^", "w", "(x", "x^-1", "1/0"])
def test_parse_errors(bad):
    with pytest.raises((ParseError, ZeroDivisionError)):
        parse_poly(bad)


@settings(max_examples=60, deadline=None)
@given(polys())
def test_format_roundtrip(f):
    assert parse_poly(format_poly(f), 3) == f


@settings(max_examples=30, deadline=None)
@given(polys(field=GF(7)))
def test_format_roundtrip_mod_p(f):
    assert parse_poly(format_poly(f), 3, GF(7)) == f
