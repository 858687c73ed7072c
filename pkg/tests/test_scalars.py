from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from lienil.scalars import (FieldError, FieldSpec, GF, QQ, Scalar, base_p_digits, binomial,
                            is_power_of, lucas_binomial, p_adic_valuation)

F5 = GF(5)


def test_field_examples():
    assert Scalar(F5, 3) + Scalar(F5, 4) == Scalar(F5, 2)
    assert Scalar(QQ, Fraction(1, 2)) * Scalar(QQ, Fraction(2, 3)) == Scalar(QQ, Fraction(1, 3))
    assert Scalar(F5, 2).inverse() == Scalar(F5, 3)


@pytest.mark.parametrize("p", [2, 3, 4, 9, -5])
def test_rejected_characteristics(p):
    with pytest.raises(FieldError):
        FieldSpec(p)


def test_errors():
    with pytest.raises(ZeroDivisionError):
        Scalar(F5, 0).inverse()
    with pytest.raises(ZeroDivisionError):
        Scalar(QQ, 0).inverse()
    with pytest.raises(FieldError):
        Scalar(F5, 1) + Scalar(GF(7), 1)
    with pytest.raises(ValueError):
        binomial(3, 4)


def test_binomial_examples():
    assert binomial(5, 2, F5) == 0
    assert binomial(4, 0, QQ) == 1
    assert binomial(10, 5, F5) == 2
    assert base_p_digits(10, 5) == [0, 2]      # least significant first


def test_valuation_examples():
    assert p_adic_valuation(50, 5) == 2
    assert p_adic_valuation(7, 5) == 0
    assert p_adic_valuation(125, 5) == 3


@pytest.mark.parametrize("p", [5, 7])
def test_binomial_matches_lucas(p):
    F = GF(p)
    for n in range(201):
        for k in range(n + 1):
            assert binomial(n, k, F).value == lucas_binomial(n, k, p) == comb(n, k) % p


@pytest.mark.parametrize("p,t", [(5, 1), (5, 2), (7, 1), (7, 2)])
def test_prime_power_binomials_vanish(p, t):
    q = p ** t
    assert all(binomial(q, i, GF(p)) == 0 for i in range(1, q))
    # C(q*m, q) is a unit when (m, p) = 1
    for m in range(1, 12):
        if m % p:
            assert binomial(q * m, q, GF(p)) != 0


def test_is_power_of():
    assert is_power_of(25, 5) and is_power_of(5, 5)
    assert not is_power_of(1, 5) and not is_power_of(10, 5)


fields = st.sampled_from([QQ, GF(5), GF(7), GF(101)])
ints = st.integers(-50, 50)


@given(fields, ints, ints, ints)
def test_field_axioms(F, a, b, c):
    a, b, c = Scalar(F, a), Scalar(F, b), Scalar(F, c)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == F.zero()
    if a:
        assert a * a.inverse() == F.one()


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50))
def test_rationals_are_reduced(a, b):
    s = Scalar(QQ, a) * Scalar(QQ, b)
    v = Fraction(s.value)
    assert v == a * b and v.denominator > 0
