from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lienil.components import component, multinomial
from lienil.freealg import NcPoly, commutator, right_normed
from lienil.scalars import GF, QQ
from lienil.tgrade import (CapExceeded, Caps, GradedSpan, center_component, commutator_poly,
                           commutator_tideal, commutator_tspace, contains, monomials, multidegrees,
                           multidegrees_upto, product_span, proper_ideal_component, span_equal,
                           span_leq, tideal_component, tspace_component)

F5 = GF(5)


def gens(rank, field=QQ):
    return NcPoly.gens(rank, field)


def words_by_deg(rank, d):
    return [w for k in range(1, sum(d) + 1) for w in product(range(rank), repeat=k)
            if all(w.count(i) <= d[i] for i in range(rank))]


def brute_tideal(n, rank, d, field=QQ):
    """Span of a * [u_1, ..., u_n] * b over words a, b, u_i (u_i nonempty).

    Monomial substitution into the multilinear commutator spans the T-space,
    so this is the T-ideal component computed with no recursion at all."""
    d = tuple(d)
    comp = component(rank, d)
    cands = words_by_deg(rank, d)
    deg = {w: tuple(w.count(i) for i in range(rank)) for w in cands}
    rows = []

    def wp(w):
        return NcPoly.monomial(w, rank, field)

    def rec(acc, used):
        if len(acc) == n:
            core = right_normed(*[wp(w) for w in acc])
            if core.is_zero():
                return
            rest = tuple(a - b for a, b in zip(d, used))
            outer = [()] + [w for w in cands if all(w.count(i) <= rest[i] for i in range(rank))]
            for a in outer:
                for b in outer:
                    f = wp(a) * core * wp(b)
                    if f.the_multidegree() == d:
                        rows.append(comp.int_vector(f))
            return
        for w in cands:
            u = tuple(a + b for a, b in zip(used, deg[w]))
            if all(a <= b for a, b in zip(u, d)):
                rec(acc + [w], u)

    rec([], (0,) * rank)
    return GradedSpan.from_rows(rank, field, d, rows) if rows else GradedSpan.zero(rank, field, d)


def test_monomials_examples():
    assert monomials(2, (1, 1)) == [(0, 1), (1, 0)]
    assert len(monomials(2, (2, 1))) == 3
    assert len(monomials(3, (1, 1, 1))) == 6


def test_tideal_examples():
    x, y = gens(2)
    assert commutator_tideal(3, 2, (1, 1)).dim == 0
    assert commutator_tideal(3, 2, (2, 2)).contains(commutator(x, y) ** 2)
    assert not commutator_tideal(4, 2, (2, 2)).contains(commutator(x, y) ** 2)
    X, Y, Z, T = gens(4)
    assert not commutator_tideal(3, 4, (1, 1, 1, 1)).contains(commutator(X, Y) * commutator(Z, T))
    s = commutator_tideal(3, 2, (2, 2))
    assert span_equal(s, s) and span_leq(s, s) and contains(s, commutator(x, y) ** 2)
    with pytest.raises(ValueError):
        s.contains(x * y)


def test_tspace_examples():
    x, y = gens(2)
    assert tspace_component([commutator(x, y)], 2, (2, 1)).contains(commutator(x * x, y))
    x5 = NcPoly.gen(0, 1, F5) ** 5
    Z = tspace_component([x5], 2, (5, 5), F5)
    assert Z.dim == 182
    X, Y = gens(2, F5)
    assert Z.contains((X * Y) ** 5)
    # modulo commutators the T-space is K[x^5, y^5]
    ZC = Z + commutator_tideal(2, 2, (5, 5), F5)
    assert ZC.contains(X ** 5 * Y ** 5)
    ZC3 = tspace_component([x5], 2, (5, 3), F5) + commutator_tideal(2, 2, (5, 3), F5)
    assert not ZC3.contains(X ** 5 * Y ** 3)


@pytest.mark.parametrize("n,rank,maxdeg", [(2, 2, 5), (3, 2, 5), (2, 3, 4), (3, 3, 4), (4, 2, 5)])
def test_tideal_matches_brute_force(n, rank, maxdeg):
    for d in multidegrees_upto(rank, maxdeg):
        assert commutator_tideal(n, rank, d) == brute_tideal(n, rank, d), d


@pytest.mark.parametrize("field", [QQ, F5])
def test_general_route_equals_fast_route(field):
    for n in (2, 3, 4):
        g = commutator_poly(n, field)
        for d in multidegrees_upto(2, 6):
            assert tideal_component([g], 2, d, field) == commutator_tideal(n, 2, d, field)
            assert tspace_component([g], 2, d, field) == commutator_tspace(n, 2, d, field)


def test_monotone_tower_and_v_below_t():
    for field in (QQ, F5):
        for rank, maxdeg in ((2, 7), (3, 6)):
            for d in multidegrees_upto(rank, maxdeg):
                for n in range(2, 6):
                    Tn, Tn1 = commutator_tideal(n, rank, d, field), commutator_tideal(n + 1, rank, d, field)
                    assert Tn1 <= Tn
                    assert commutator_tspace(n, rank, d, field) <= Tn


def test_canonical_in_generator_order():
    x, y = gens(2)
    a, b = commutator(x, y) * x, right_normed(x, y, y)
    for d in multidegrees_upto(2, 5, 3):
        assert tideal_component([a, b], 2, d) == tideal_component([b, a], 2, d)
        assert tideal_component([a, b], 2, d).matrix == tideal_component([b, a.scale(3)], 2, d).matrix


def test_product_span_examples():
    A = commutator_tideal(2, 3, (1, 1, 0))
    B = commutator_tideal(2, 3, (0, 1, 1))
    assert product_span(A, B) <= commutator_tideal(3, 3, (1, 2, 1))
    Z = GradedSpan.zero(3, QQ, (1, 0, 0))
    assert product_span(Z, A).dim == 0
    A4 = commutator_tideal(2, 4, (1, 1, 0, 0))
    B4 = commutator_tideal(2, 4, (0, 0, 1, 1))
    assert not product_span(A4, B4) <= commutator_tideal(3, 4, (1, 1, 1, 1))


def test_center_examples():
    x, y = gens(2)
    Z = center_component(3, 2, (1, 1))
    assert Z.dim == 1 and Z.contains(commutator(x, y))
    assert center_component(4, 2, (1, 1)).dim == commutator_tideal(3, 2, (1, 1)).dim == 0
    Y = NcPoly.gen(1, 2, F5)
    assert center_component(4, 2, (0, 5), F5).contains(Y ** 5)
    with pytest.raises(ValueError):
        center_component(3, 4, (1, 1, 1, 1))


def test_proper_ideal_examples():
    x, y = gens(2)
    assert proper_ideal_component(3, 2, (1, 1)).dim == 0
    I2 = proper_ideal_component(2, 2, (1, 1))
    assert I2.dim == 1 and I2.contains(commutator(x, y))
    assert proper_ideal_component(4, 2, (2, 2)).contains(commutator(x, y) ** 2)


def test_caps_are_loud():
    with pytest.raises(CapExceeded):
        commutator_tideal(3, 2, (5, 5), caps=Caps(max_total_degree=8))
    x, y = gens(2)
    with pytest.raises(CapExceeded):
        tspace_component([commutator(x, y) * x * y], 2, (6, 6), caps=Caps(max_substitutions=10))


def test_multidegrees():
    assert multidegrees(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert len(multidegrees_upto(3, 3)) == 3 + 6 + 10
    assert all(component(3, d).size == multinomial(d) for d in multidegrees_upto(3, 4))


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 4), st.sampled_from(multidegrees_upto(3, 5, 2)))
def test_random_combinations_stay_inside(n, d):
    T = commutator_tideal(n, 3, d)
    if not T.dim:
        return
    rng = np.random.default_rng(sum(d) * 31 + n)
    rows = T.generator_rows()
    v = rng.integers(-3, 4, len(rows)) @ rows
    f = T.component.poly([int(a) for a in v], QQ)
    assert f.is_zero() or T.contains(f)
