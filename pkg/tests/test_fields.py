from __future__ import annotations

import pickle
from fractions import Fraction

import pytest

from grasspole.errors import (
    DivisionByZero,
    FieldMismatch,
    InfiniteField,
    NonPrimeCharacteristic,
    ReducibleModulus,
)
from grasspole.fields import (
    GF,
    QQ,
    FieldSpec,
    embed_int,
    enumerate_field,
    is_irreducible_mod_p,
    make_field,
    quadratic_extension,
)


def test_prime_field_order():
    assert make_field("5").order == 5
    assert make_field(5).characteristic == 5


def test_extension_field_from_spec_string():
    F4 = make_field("2^2:modulus=1,1,1")
    assert F4.order == 4
    assert str(F4.spec) == "2^2:modulus=1,1,1"


def test_non_prime_characteristic():
    with pytest.raises(NonPrimeCharacteristic):
        make_field("6")
    with pytest.raises(NonPrimeCharacteristic):
        GF(1)
    with pytest.raises(NonPrimeCharacteristic):
        GF(12)


def test_reducible_modulus_rejected():
    # x^2 + 1 = (x + 1)^2 over GF(2)
    with pytest.raises(ReducibleModulus):
        make_field("2^2:modulus=1,0,1")


def test_irreducibility_oracle_by_root_search():
    # a quadratic or cubic over GF(p) is irreducible iff it has no root
    for p in (2, 3, 5):
        for deg in (2, 3):
            for tail in __import__("itertools").product(range(p), repeat=deg):
                coeffs = list(tail) + [1]
                has_root = any(
                    sum(c * x**i for i, c in enumerate(coeffs)) % p == 0 for x in range(p)
                )
                assert is_irreducible_mod_p(coeffs, p) == (not has_root)


def test_small_arithmetic():
    F5 = make_field(5)
    assert F5(3) * F5(4) == F5(2)
    assert F5(2).inv() == F5(3)
    F4 = make_field("2^2:modulus=1,1,1")
    a = F4.generator
    assert a * a == a + 1


def test_division_by_zero_and_mismatch():
    F5 = make_field(5)
    with pytest.raises(DivisionByZero):
        F5(1) / F5(0)
    with pytest.raises(DivisionByZero):
        QQ(1) / QQ(0)
    with pytest.raises(FieldMismatch):
        F5(1) + make_field(7)(1)


def test_embed_int():
    assert embed_int(7, make_field(5)) == make_field(5)(2)
    assert embed_int(-1, make_field(2)) == make_field(2)(1)
    x = embed_int(3, QQ)
    assert x.value == Fraction(3, 1)


def test_embed_characteristic_is_zero():
    for q in (2, 3, 4, 8, 9):
        F = GF(q)
        assert embed_int(F.characteristic, F) == F(0)


def test_enumerate():
    assert [x.value for x in enumerate_field(make_field(2))] == [0, 1]
    F4 = enumerate_field(GF(4))
    assert len(F4) == 4 and F4[0] == GF(4)(0)
    with pytest.raises(InfiniteField):
        enumerate_field(QQ)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 25, 27])
def test_enumeration_distinct_and_frobenius(q):
    F = GF(q)
    elems = enumerate_field(F)
    assert len(elems) == q
    assert len(set(elems)) == q
    for x in elems:
        assert x**q == x


def test_inverse_involution():
    for q in (5, 8, 9):
        F = GF(q)
        for x in enumerate_field(F)[1:]:
            assert x.inv().inv() == x
            assert x * x.inv() == F(1)


def test_quadratic_extension_odd():
    qe = quadratic_extension(make_field(5))
    # least non-residue mod 5 is 2 (squares are 0, 1, 4): modulus x^2 - 2
    squares = {x * x % 5 for x in range(5)}
    assert 2 not in squares
    assert qe.spec.modulus == (3, 0, 1)
    assert qe.field.order == 25


def test_quadratic_extension_two():
    qe = quadratic_extension(make_field(2))
    assert qe.spec.modulus == (1, 1, 1)


def test_quadratic_extension_embedding_is_homomorphism():
    for base in (make_field(3), make_field(7), GF(4)):
        qe = quadratic_extension(base)
        for x in enumerate_field(base):
            for y in enumerate_field(base):
                assert qe.embed(x * y) == qe.embed(x) * qe.embed(y)
                assert qe.embed(x + y) == qe.embed(x) + qe.embed(y)
        # a non-square of the base becomes a square upstairs
        if base.characteristic != 2:
            ns = next(x for x in enumerate_field(base) if base.sqrt(x.value) is None)
            assert qe.field.sqrt(qe.embed(ns).value) is not None


def test_quadratic_extension_of_rationals():
    with pytest.raises(InfiniteField):
        quadratic_extension(QQ)


def test_spec_round_trip():
    for text in ("QQ", "7", "2^2:modulus=1,1,1", "3^2:modulus=1,0,1"):
        assert str(FieldSpec.parse(text)) == text
        assert str(make_field(text).spec) == text


def test_element_parse_format_round_trip():
    for F in (QQ, make_field(7), GF(9), GF(8)):
        elems = enumerate_field(F) if F.is_finite else [QQ(Fraction(-3, 4)), QQ(5)]
        for x in elems:
            assert F(str(x)) == x


def test_field_pickles_to_same_handle():
    F = GF(9)
    assert pickle.loads(pickle.dumps(F)) is F
