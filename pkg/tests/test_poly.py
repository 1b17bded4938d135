from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from grasspole.errors import FieldMismatch, InfiniteField, ZeroPolynomial
from grasspole.fields import GF, QQ, make_field
from grasspole.poly import (
    NEG_INF,
    BinomialTable,
    Poly,
    binomial_in_field,
    classical_derivative,
    hasse_derivative,
    poly_gcd,
    roots_in_field,
)

from property_checks import hasse_composition_rule, hasse_product_rule

F2, F3, F5 = make_field(2), make_field(3), make_field(5)


def s(F):
    return Poly.s(F)


def test_canonical_form_and_zero_degree():
    assert Poly(F5, [1, 0, 5, 0]).c == (1,)
    z = Poly.zero(F5)
    assert z.degree == NEG_INF and z.degree < Poly.one(F5).degree


def test_freshman_dream():
    assert (s(F2) + 1) ** 2 == s(F2) ** 2 + 1


def test_eval():
    f = s(F2) ** 3 + s(F2) + 1
    assert f(1) == F2(1)


def test_monic():
    assert Poly(F5, [3, 0, 3]).monic() == Poly(F5, [1, 0, 1])
    with pytest.raises(ZeroPolynomial):
        Poly.zero(F5).monic()


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        s(F2) + s(F3)


def test_degree_additive():
    rng = random.Random(3)
    for F in (F2, F5, QQ):
        for _ in range(20):
            a = Poly(F, [rng.randint(-3, 3) for _ in range(rng.randint(1, 5))] + [1])
            b = Poly(F, [rng.randint(-3, 3) for _ in range(rng.randint(1, 5))] + [1])
            assert (a * b).degree == a.degree + b.degree


def test_divmod_reconstructs():
    rng = random.Random(4)
    for _ in range(30):
        a = Poly(F5, [rng.randrange(5) for _ in range(7)])
        b = Poly(F5, [rng.randrange(5) for _ in range(3)] + [1])
        q, r = a.divmod(b)
        assert q * b + r == a and r.degree < b.degree


def test_hasse_examples():
    assert hasse_derivative(s(F2) ** 2, 1).is_zero()
    u = Poly(F5, [1, 2, 3, 4])
    assert hasse_derivative(u, 0) == u
    assert hasse_derivative(Poly.monomial(QQ, 3), 2) == Poly.monomial(QQ, 1, 3)


def test_hasse_definition_oracle():
    # coefficient j - i is C(j, i) u_j, computed independently with math.comb
    rng = random.Random(5)
    for F in (F2, F3, F5, QQ):
        for _ in range(10):
            coeffs = [rng.randrange(5) for _ in range(9)]
            u = Poly(F, coeffs)
            for i in range(10):
                want = [math.comb(j, i) * coeffs[j] for j in range(i, len(coeffs))]
                assert hasse_derivative(u, i) == Poly(F, want)


def test_classical_examples():
    assert classical_derivative(Poly.monomial(QQ, 3), 2) == Poly.monomial(QQ, 1, 6)
    for q in (2, 3, 5):
        F = make_field(q)
        assert classical_derivative(Poly.monomial(F, 2 * q), 1).is_zero()


def test_classical_equals_factorial_times_hasse_over_q():
    u = Poly.monomial(QQ, 5)
    for i in range(6):
        assert classical_derivative(u, i) == hasse_derivative(u, i).scale(math.factorial(i))


def test_classical_vanishes_beyond_characteristic_but_hasse_does_not():
    for q in (2, 3, 5):
        F = make_field(q)
        rng = random.Random(q)
        for _ in range(10):
            u = Poly(F, [rng.randrange(q) for _ in range(12)])
            for i in range(q, 9):
                assert classical_derivative(u, i).is_zero()
        for i in range(12):
            assert hasse_derivative(Poly.monomial(F, i), i) == Poly.one(F)


def test_hasse_product_rule():
    rng = random.Random(6)
    for F in (F2, F3, F5, QQ):
        assert hasse_product_rule(F, rng, trials=5) > 0


def test_hasse_composition_rule():
    for F in (F2, F3, QQ):
        assert hasse_composition_rule(F, 12) > 0


def test_binomials():
    assert binomial_in_field(6, 4, F2) == F2(1)
    t = BinomialTable()
    assert t(3, 5) == 0
    for j in range(1, 15):
        for i in range(1, j):
            assert t(j, i) == t(j - 1, i - 1) + t(j - 1, i)


def test_gcd():
    x = s(QQ)
    assert poly_gcd(x**2 - 1, x - 1) == x - 1
    assert poly_gcd(Poly.zero(QQ), Poly.zero(QQ)).is_zero()


def test_roots():
    roots = roots_in_field(s(F2) ** 2 + s(F2))
    assert sorted(r.value for r, _ in roots) == [0, 1]
    double = roots_in_field((s(F5) - 2) ** 2 * (s(F5) + 1))
    assert {(r.value, mu) for r, mu in double} == {(2, 2), (4, 1)}
    with pytest.raises(InfiniteField):
        roots_in_field(s(QQ))
    with pytest.raises(ZeroPolynomial):
        roots_in_field(Poly.zero(F5))


def test_roots_over_extension():
    F4 = GF(4)
    f = s(F4) ** 2 + s(F4) + 1  # splits in GF(4)
    assert sum(mu for _, mu in roots_in_field(f)) == 2


def test_str():
    f = s(F2) ** 3 + s(F2) ** 2 + 1
    assert str(f) == "s^3 + s^2 + 1"


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(0, 6), min_size=1, max_size=6),
    st.lists(st.integers(0, 6), min_size=1, max_size=6),
    st.integers(0, 6),
)
def test_eval_is_ring_homomorphism(a, b, x):
    F7 = make_field(7)
    f, g = Poly(F7, a), Poly(F7, b)
    assert (f * g)(x) == f(x) * g(x)
    assert (f + g)(x) == f(x) + g(x)
