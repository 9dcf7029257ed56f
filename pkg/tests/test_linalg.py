"""Tests for the exact sparse elimination and the modular rank certificate."""

from fractions import Fraction

from mystica.cyclo import Cyclotomic, cyc_make
from mystica.linalg import SparseMatrix, modular_full_rank_certificate, sparse_rank


def R(q):
    return Cyclotomic.rational(Fraction(q))


def test_sparse_rank_small_rational():
    rows = [
        {0: R(1), 1: R(2)},
        {0: R(2), 1: R(4)},  # dependent
        {2: R(5)},
    ]
    assert sparse_rank(rows) == 2


def test_sparse_rank_cyclotomic_dependence():
    i = cyc_make(4, 1)
    rows = [
        {0: Cyclotomic.one(4), 1: i},
        {0: i, 1: -Cyclotomic.one(4)},  # i times the first row
        {0: R(1)},
    ]
    assert sparse_rank(rows) == 2


def test_sparse_rank_identity_block():
    rows = [{j: R(1)} for j in range(7)]
    assert sparse_rank(rows) == 7
    assert sparse_rank(rows + [dict((j, R(3)) for j in range(7))]) == 7


def test_sparse_rank_same_support_bucket():
    # many rows on one support: rank is the character-matrix rank
    w = cyc_make(3, 1)
    rows = [
        {0: R(1), 1: R(1), 2: R(1)},
        {0: R(1), 1: w, 2: w * w},
        {0: R(1), 1: w * w, 2: w},
        {0: R(3), 1: R(0) + w + w * w + R(2), 2: R(2) + w + w * w},  # sum of the rows above
    ]
    assert sparse_rank(rows) == 3


def test_modular_certificate_full_rank():
    i = cyc_make(4, 1)
    rows = [
        {0: Cyclotomic.one(4), 1: i},
        {0: i, 1: Cyclotomic.one(4)},
    ]
    assert modular_full_rank_certificate(rows, 2)


def test_modular_certificate_rejects_dependence():
    i = cyc_make(4, 1)
    rows = [
        {0: Cyclotomic.one(4), 1: i},
        {0: i, 1: -Cyclotomic.one(4)},
    ]
    assert not modular_full_rank_certificate(rows, 2)


def test_modular_certificate_agrees_with_exact_on_random_family():
    import random

    rng = random.Random(77)
    for _ in range(30):
        n_rows = rng.randint(2, 6)
        n_cols = rng.randint(2, 6)
        rows = []
        for _ in range(n_rows):
            row = {}
            for c in range(n_cols):
                if rng.random() < 0.6:
                    row[c] = cyc_make(12, rng.randrange(12)) * R(rng.randint(-2, 2))
            rows.append({c: v for c, v in row.items() if not v.is_zero()})
        exact = sparse_rank([dict(r) for r in rows])
        certified = modular_full_rank_certificate(rows, n_rows)
        if certified:
            assert exact == n_rows  # a passing certificate is a proof
        if exact == n_rows:
            assert certified  # at this size the certificate also never misses


def test_sparse_matrix_equality_and_dense():
    a = SparseMatrix(2, 2)
    a.add(0, 0, R(1))
    a.add(0, 0, R(-1))
    b = SparseMatrix(2, 2)
    assert a == b
    a.add(1, 0, cyc_make(4, 1))
    assert a != b
    dense = a.to_dense()
    assert dense[1][0] == cyc_make(4, 1)
    assert dense[0][0].is_zero()
