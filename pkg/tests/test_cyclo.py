"""Tests for exact cyclotomic arithmetic."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mystica.cyclo import (
    Cyclotomic,
    RootOfUnity,
    cyc_make,
    cyclotomic_polynomial,
    in_gaussian_half_ring,
    parse_scalar,
    scalar_to_text,
)

ORDERS = [1, 2, 3, 4, 6, 8, 12]


def test_cyclotomic_polynomials_small():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_make_identity_and_minus_one():
    assert cyc_make(4, 0) == 1
    assert cyc_make(4, 2) == -1


def test_make_rejects_nonpositive_order():
    with pytest.raises(ValueError):
        cyc_make(0, 1)


def test_cube_root_by_repeated_multiplication():
    # independent oracle: multiply out the powers one at a time
    w = cyc_make(3, 1)
    assert w * w == cyc_make(3, 2)
    assert w * w * w == 1
    # minimal polynomial x^2 + x + 1 vanishes
    assert w * w + w + 1 == Cyclotomic.zero(3)


def test_nth_power_of_primitive_root_is_one():
    for n in ORDERS:
        z = cyc_make(n, 1)
        acc = Cyclotomic.one(n)
        for _ in range(n):
            acc = acc * z
        assert acc == 1


def test_inverse_pair_of_fourth_roots():
    assert cyc_make(4, 1) * cyc_make(4, 3) == 1


def test_half_plus_half_i_times_conjugate():
    a = parse_scalar("1/2 + 1/2*zeta4^1")
    b = parse_scalar("1/2 + -1/2*zeta4^1")
    # expanding in Q(i): (1+i)(1-i)/4 = 1/2
    assert a * b == Fraction(1, 2)


def test_order_lift_normalisation():
    # zeta_8 * zeta_8 equals zeta_4 once both live at order 8
    prod = cyc_make(8, 1) * cyc_make(8, 1)
    assert prod == cyc_make(4, 1)
    assert prod.order == 8
    assert cyc_make(4, 1).lift(8).coeffs == prod.coeffs


def test_division_and_division_by_zero():
    a = cyc_make(12, 7) + 3
    b = cyc_make(12, 5) - Fraction(1, 2)
    assert (a / b) * b == a
    with pytest.raises(ZeroDivisionError):
        a / Cyclotomic.zero(12)


def test_conjugation_is_ring_map():
    a = cyc_make(8, 1) + Fraction(2, 3)
    b = cyc_make(8, 3) - 1
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()
    # conjugating i gives -i
    assert cyc_make(4, 1).conjugate() == cyc_make(4, 3)


def _random_element(rng, order):
    deg = len(cyclotomic_polynomial(order)) - 1
    coeffs = tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(deg))
    return Cyclotomic(order, coeffs)


def test_field_axioms_random_triples():
    rng = random.Random(20140404)
    for order in ORDERS:
        for _ in range(60):
            a = _random_element(rng, order)
            b = _random_element(rng, order)
            c = _random_element(rng, order)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert (a + b) + c == a + (b + c)
            if not a.is_zero():
                assert a * a.inverse() == 1


def test_canonical_difference_is_all_zero():
    rng = random.Random(7)
    for order in ORDERS:
        for _ in range(20):
            a = _random_element(rng, order)
            assert all(c == 0 for c in (a - a).coeffs)


def test_order_lift_coherence_of_products():
    rng = random.Random(11)
    for order in [2, 3, 4, 6]:
        for _ in range(25):
            a = _random_element(rng, order)
            b = _random_element(rng, order)
            low = a * b
            high = a.lift(2 * order) * b.lift(2 * order)
            assert low == high


@settings(max_examples=60, deadline=None)
@given(
    st.integers(-8, 8),
    st.integers(-8, 8),
    st.integers(-8, 8),
    st.integers(-8, 8),
    st.sampled_from([1, 2, 4]),
    st.sampled_from([1, 2, 4]),
)
def test_gaussian_half_ring_closed_under_ring_ops(a, b, c, d, da, db):
    i = cyc_make(4, 1)
    x = Cyclotomic.rational(Fraction(a, da)) + Cyclotomic.rational(Fraction(b, da)) * i
    y = Cyclotomic.rational(Fraction(c, db)) + Cyclotomic.rational(Fraction(d, db)) * i
    assert in_gaussian_half_ring(x)
    assert in_gaussian_half_ring(y)
    assert in_gaussian_half_ring(x + y)
    assert in_gaussian_half_ring(x - y)
    assert in_gaussian_half_ring(x * y)


def test_gaussian_half_ring_examples():
    assert in_gaussian_half_ring(parse_scalar("1/2 + 1/2*zeta4^1"))
    assert not in_gaussian_half_ring(Cyclotomic.rational(Fraction(1, 3)))
    assert not in_gaussian_half_ring(cyc_make(3, 1))
    # an element of Q(i) with a non-dyadic denominator
    assert not in_gaussian_half_ring(parse_scalar("1/6*zeta4^1"))
    # i itself embedded at a larger order
    assert in_gaussian_half_ring(cyc_make(12, 3))


def test_scalar_text_round_trip():
    rng = random.Random(23)
    for order in ORDERS:
        for _ in range(15):
            a = _random_element(rng, order)
            assert parse_scalar(scalar_to_text(a)) == a


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_scalar("zeta4^")
    with pytest.raises(ValueError):
        parse_scalar("(1 + zeta4^1")
    with pytest.raises(ValueError):
        parse_scalar("1 $ 2")


def test_root_of_unity_monoid_homomorphism():
    rng = random.Random(5)
    for _ in range(200):
        n1 = rng.choice(ORDERS)
        n2 = rng.choice(ORDERS)
        r1 = RootOfUnity(n1, rng.randrange(n1))
        r2 = RootOfUnity(n2, rng.randrange(n2))
        assert (r1 * r2).to_cyclotomic() == r1.to_cyclotomic() * r2.to_cyclotomic()
    assert RootOfUnity(6, 3) == RootOfUnity(2, 1)
    assert RootOfUnity(4, 1) * RootOfUnity(4, 3) == RootOfUnity.one()
