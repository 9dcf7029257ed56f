"""Tests for twisted polynomial multiplication, cocycles and invariants."""

import itertools
import random
from fractions import Fraction

import pytest

from mystica.cyclo import Cyclotomic, cyc_make
from mystica.groups import make_gmpn, make_w
from mystica.monomial import MonomialElement, adjacent_swap, identity, torus_gen
from mystica.qpoly import (
    QMatrix,
    QPolynomial,
    act_c,
    commute_check,
    fundamental_invariants,
    hilbert_free,
    invariant_degrees,
    invariant_dimension,
    operator_matrix,
    phi_eval,
    phi_w_eval,
    qform_bracket,
    qmul,
    slice_monomials,
)

MINUS2 = QMatrix.minus_one(2)
PLUS2 = QMatrix.plus_one(2)


def x(i, n, power=1):
    return QPolynomial.variable(i, n, power)


def test_qmatrix_constraints():
    with pytest.raises(ValueError):
        QMatrix(2, [[1, 2], [3, 1]])
    with pytest.raises(ValueError):
        QMatrix(2, [[2, 1], [1, 1]])
    QMatrix(2, [[1, 2], [Fraction(1, 2), 1]])  # fine: q12*q21 = 1


def test_bracket_examples():
    assert qform_bracket(MINUS2, (1, 0), (0, 1)) == 1
    assert qform_bracket(MINUS2, (0, 1), (1, 0)) == -1
    for k in itertools.product(range(3), repeat=2):
        for kp in itertools.product(range(3), repeat=2):
            assert qform_bracket(PLUS2, k, kp) == 1


def test_qmul_examples():
    # x2 *_- x1 = -x1 x2
    assert qmul(MINUS2, x(2, 2), x(1, 2)) == QPolynomial(2, {(1, 1): -1})
    f = x(1, 2) + x(2, 2).scale(3)
    one = QPolynomial.monomial((0, 0))
    assert qmul(MINUS2, one, f) == f
    assert qmul(MINUS2, f, one) == f
    # cross terms cancel in the twisted square of x1 + x2
    s = x(1, 2) + x(2, 2)
    assert qmul(MINUS2, s, s) == QPolynomial(2, {(2, 0): 1, (0, 2): 1})


def test_qmul_associative_randomized():
    rng = random.Random(17)
    q = QMatrix(2, [[1, cyc_make(4, 1)], [cyc_make(4, 3), 1]])
    for mats in (MINUS2, q):
        for _ in range(40):
            polys = []
            for _ in range(3):
                terms = {
                    (rng.randrange(3), rng.randrange(3)): rng.randint(-2, 2)
                    for _ in range(2)
                }
                polys.append(QPolynomial(2, terms))
            f, g, h = polys
            assert qmul(mats, qmul(mats, f, g), h) == qmul(mats, f, qmul(mats, g, h))


def test_phi_examples():
    c = cyc_make(4, 1)
    assert phi_eval(c, 0, 1, (1, 0)) == c
    assert phi_eval(1, 0, 1, (1, 1)) == -1
    assert phi_eval(0, 0, 1, (1, 1)) == 1  # the untwisted tag
    assert phi_w_eval(c, (0, 1, 2), (3, 1, 4)) == 1  # identity has no inversions


def test_phi_antisymmetry_and_inverse():
    # phi_ij^(1/c) = phi_ij^(c)^-1 = phi_ji^(c)
    for cval in [cyc_make(4, 1), cyc_make(3, 1), Cyclotomic.rational(1)]:
        for k in itertools.product(range(4), repeat=2):
            a = phi_eval(cval, 0, 1, k)
            b = phi_eval(cval.inverse(), 0, 1, k)
            assert a * b == 1
            assert phi_eval(cval, 1, 0, k) == b


def test_cocycle_composition_law():
    # phi_{w'w}(k) = phi_{w'}(w(k)) phi_w(k)
    from mystica.monomial import perm_apply

    rng = random.Random(3)
    for n in (2, 3, 4):
        perms = list(itertools.permutations(range(n)))
        for c in (0, 1, cyc_make(4, 1), cyc_make(3, 1)):
            for _ in range(60):
                w = rng.choice(perms)
                wp = rng.choice(perms)
                k = tuple(rng.randrange(5) for _ in range(n))
                ww = tuple(wp[w[i]] for i in range(n))
                lhs = phi_w_eval(c, ww, k)
                rhs = phi_w_eval(c, wp, perm_apply(w, k)) * phi_w_eval(c, w, k)
                assert lhs == rhs


def test_twisted_multiplicativity_of_cocycle():
    # <k,k'> phi_w(k+k') = <w(k),w(k')> phi_w(k) phi_w(k') with all a_ij = -1
    from mystica.monomial import perm_apply

    rng = random.Random(4)
    for n in (2, 3):
        q = QMatrix.minus_one(n)
        perms = list(itertools.permutations(range(n)))
        for _ in range(200):
            w = rng.choice(perms)
            k = tuple(rng.randrange(4) for _ in range(n))
            kp = tuple(rng.randrange(4) for _ in range(n))
            ksum = tuple(a + b for a, b in zip(k, kp))
            lhs = qform_bracket(q, k, kp) * phi_w_eval(1, w, ksum)
            rhs = (
                qform_bracket(q, perm_apply(w, k), perm_apply(w, kp))
                * phi_w_eval(1, w, k)
                * phi_w_eval(1, w, kp)
            )
            assert lhs == rhs


def test_act_examples():
    s1 = adjacent_swap(2, 4, 1)
    x1x2 = QPolynomial.monomial((1, 1))
    assert act_c(1, s1, x1x2) == x1x2.scale(-1)
    t1 = torus_gen(2, 4, 1, 1)
    for k in range(4):
        xk = QPolynomial.monomial((k, 0))
        assert act_c(0, t1, xk) == xk.scale(cyc_make(4, k))
    assert act_c(0, s1, QPolynomial.monomial((2, 1))) == QPolynomial.monomial((1, 2))


def test_action_composition_law():
    rng = random.Random(8)
    n, N = 3, 4
    perms = list(itertools.permutations(range(n)))
    for c in (0, 1, cyc_make(4, 1)):
        for _ in range(80):
            a = MonomialElement(n, N, rng.choice(perms), tuple(rng.randrange(N) for _ in range(n)))
            b = MonomialElement(n, N, rng.choice(perms), tuple(rng.randrange(N) for _ in range(n)))
            f = QPolynomial(n, {tuple(rng.randrange(4) for _ in range(n)): rng.randint(-2, 2) for _ in range(2)})
            assert act_c(c, a * b, f) == act_c(c, a, act_c(c, b, f))


def test_actions_are_algebra_maps():
    # untwisted action respects the plain product, twisted action respects the
    # sign-twisted product, for every element of G(2,1,3)
    rng = random.Random(12)
    G = make_gmpn(2, 1, 3)
    q = QMatrix.minus_one(3)
    plain = QMatrix.plus_one(3)
    for g in G.elements:
        for _ in range(6):
            k = tuple(rng.randrange(4) for _ in range(3))
            kp = tuple(rng.randrange(4) for _ in range(3))
            f, h = QPolynomial.monomial(k), QPolynomial.monomial(kp)
            assert act_c(0, g, qmul(plain, f, h)) == qmul(plain, act_c(0, g, f), act_c(0, g, h))
            assert act_c(1, g, qmul(q, f, h)) == qmul(q, act_c(1, g, f), act_c(1, g, h))


def test_operator_matrix_identity():
    e = identity(2, 4)
    for d in range(4):
        mat = operator_matrix(e, 1, d)
        dim = len(slice_monomials(2, d))
        assert mat.entries == {(i, i): Cyclotomic.one() for i in range(dim)}


def test_operator_matrix_swap_degree_two():
    mat = operator_matrix(adjacent_swap(2, 4, 1), 1, 2)
    # basis order: x1^2, x1 x2, x2^2
    assert mat.entries[(2, 0)] == 1
    assert mat.entries[(0, 2)] == 1
    assert mat.entries[(1, 1)] == -1
    assert len(mat.entries) == 3


def test_operator_matrix_group_sum_symmetrizes():
    G = make_gmpn(1, 1, 2).lift(4)
    terms = [(g, Cyclotomic.one()) for g in G.elements]
    mat = operator_matrix(terms, 0, 1)
    assert mat.entries == {
        (0, 0): Cyclotomic.one(),
        (1, 0): Cyclotomic.one(),
        (0, 1): Cyclotomic.one(),
        (1, 1): Cyclotomic.one(),
    }


def test_invariant_dimension_examples():
    W = make_w(2, 1, 2)
    assert invariant_dimension(W, 1, 2) == 2
    for G in (W, make_gmpn(2, 1, 2)):
        assert invariant_dimension(G, 0, 0) == 1
        assert invariant_dimension(G, 1, 0) == 1
    # oracle: coefficient of t^4 in 1/((1-t^2)(1-t^4))
    assert invariant_dimension(make_gmpn(2, 1, 2), 0, 4) == hilbert_free([2, 4], 4)[4]
    assert invariant_dimension(make_gmpn(2, 1, 2), 0, 4) == 2


def test_hilbert_free_examples():
    assert hilbert_free([2, 2], 6) == [1, 0, 2, 0, 3, 0, 4]
    assert hilbert_free([], 4) == [1, 0, 0, 0, 0]
    assert hilbert_free([2, 4], 4) == [1, 0, 1, 0, 2]


def test_fundamental_invariants_examples():
    polys = fundamental_invariants(2, 2, 2)
    assert polys[0] == QPolynomial(2, {(2, 0): 1, (0, 2): 1})
    assert polys[1] == QPolynomial(2, {(1, 1): 1})
    polys = fundamental_invariants(1, 1, 2)
    assert polys[0] == QPolynomial(2, {(1, 0): 1, (0, 1): 1})
    assert polys[1] == QPolynomial(2, {(1, 1): 1})
    for m, p, n in [(2, 2, 2), (4, 2, 3), (6, 3, 2)]:
        degs = [max(sum(k) for k in poly.terms) for poly in fundamental_invariants(m, p, n)]
        assert degs == invariant_degrees(m, p, n)


def test_commute_check_examples():
    assert commute_check(MINUS2, fundamental_invariants(2, 2, 2))
    assert not commute_check(MINUS2, [x(1, 2), x(2, 2)])
    f = x(1, 2) + x(2, 2)
    g = QPolynomial.monomial((1, 1))
    assert not commute_check(MINUS2, [f, g])
    # the one-sided product is x1^2 x2 - x1 x2^2
    assert qmul(MINUS2, f, g) == QPolynomial(2, {(2, 1): 1, (1, 2): -1})
    assert qmul(MINUS2, g, f) == QPolynomial(2, {(2, 1): -1, (1, 2): 1})


def test_odd_rank_invariants_not_closed_under_twisted_product():
    # for odd m the product of two untwisted invariants can leave the
    # untwisted invariant space
    f = x(1, 2) + x(2, 2)
    g = QPolynomial.monomial((1, 1))
    prod = qmul(MINUS2, f, g)
    s1 = adjacent_swap(2, 4, 1)
    assert act_c(0, s1, f) == f
    assert act_c(0, s1, g) == g
    assert act_c(0, s1, prod) != prod


def test_integer_fast_path_matches_generic_path():
    # scaling by 1/2 forces the generic accumulation; doubling must recover
    # the integer-path result exactly
    rng = random.Random(44)
    for G in (make_gmpn(2, 1, 2), make_w(2, 1, 2), make_gmpn(2, 2, 3)):
        for c in (0, 1):
            for d in range(4):
                fast = operator_matrix([(g, Cyclotomic.one()) for g in G.elements], c, d)
                half = Cyclotomic.rational(Fraction(1, 2))
                slow = operator_matrix([(g, half) for g in G.elements], c, d)
                doubled = {key: v * 2 for key, v in slow.entries.items()}
                assert fast.entries.keys() == doubled.keys()
                assert all(fast.entries[k] == doubled[k] for k in doubled)


def test_slice_monomials_order():
    assert slice_monomials(2, 2) == ((2, 0), (1, 1), (0, 2))
    assert slice_monomials(3, 1) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert len(slice_monomials(3, 4)) == 15


def test_polynomial_text_and_json():
    f = QPolynomial(2, {(2, 1): 1, (1, 2): -1})
    assert f.to_text() == "x1^2*x2 + (-1)*x1*x2^2"
    assert f.to_json() == [
        {"exp": [2, 1], "coeff": "1"},
        {"exp": [1, 2], "coeff": "-1"},
    ]
