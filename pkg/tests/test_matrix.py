"""Exact matrices, minimal polynomials, and structural predicates."""

import random
from fractions import Fraction

import pytest

import corpus
import oracles
from finefrob import (
    Matrix,
    Polynomial,
    PrimeField,
    QQ,
    eval_poly_at_matrix,
    is_k_regular_matrix,
    is_nilpotent,
    is_semisimple,
    minimal_polynomial,
    splitting_bound_of_matrix,
)
from finefrob.errors import (
    DimensionMismatch,
    FieldMismatch,
    NotInvertible,
    NotKRegular,
)


def q(*coeffs):
    return Polynomial(QQ, [Fraction(c) for c in coeffs])


def qmat(rows):
    return Matrix(QQ, [[Fraction(e) for e in row] for row in rows])


# ---------------------------------------------------------------------------
# construction and ring operations
# ---------------------------------------------------------------------------

def test_shape_validation():
    with pytest.raises(DimensionMismatch):
        Matrix(QQ, [[Fraction(1), Fraction(2)]])
    with pytest.raises(DimensionMismatch):
        Matrix(QQ, [[Fraction(1)], [Fraction(2), Fraction(3)]])


def test_identity_zero_diagonal():
    eye = Matrix.identity(QQ, 3)
    assert eye.entry(0, 0) == 1 and eye.entry(0, 1) == 0
    assert Matrix.zeros(QQ, 2).is_zero
    d = Matrix.diagonal(QQ, [Fraction(2), Fraction(5)])
    assert d.entry(0, 0) == 2 and d.entry(1, 1) == 5 and d.entry(0, 1) == 0


def test_arithmetic_against_oracle():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(1, 4)
        a = corpus.random_matrix(rng, QQ, n)
        b = corpus.random_matrix(rng, QQ, n)
        ta = tuple(tuple(a.entry(i, j) for j in range(n)) for i in range(n))
        tb = tuple(tuple(b.entry(i, j) for j in range(n)) for i in range(n))
        prod = a * b
        oracle_prod = oracles.mat_mul(QQ, ta, tb)
        for i in range(n):
            for j in range(n):
                assert prod.entry(i, j) == oracle_prod[i][j]
        sums = a + b
        oracle_sum = oracles.mat_add(ta, tb)
        for i in range(n):
            for j in range(n):
                assert sums.entry(i, j) == oracle_sum[i][j]


def test_scalar_multiplication_and_power():
    m = qmat([[1, 2], [3, 4]])
    assert Fraction(2) * m == m.scale(Fraction(2))
    assert m**0 == Matrix.identity(QQ, 2)
    assert m**3 == m * m * m


def test_field_mismatch():
    a = qmat([[1]])
    field = PrimeField(5)
    b = Matrix(field, [[field.from_int(1)]])
    with pytest.raises(FieldMismatch):
        a + b


def test_trace_transpose():
    m = qmat([[1, 2], [3, 4]])
    assert m.trace() == 5
    assert m.transpose() == qmat([[1, 3], [2, 4]])


# ---------------------------------------------------------------------------
# rank and inverse
# ---------------------------------------------------------------------------

def test_rank_matches_oracle():
    rng = random.Random(17)
    for _ in range(40):
        n = rng.randint(1, 4)
        m = corpus.random_matrix(rng, QQ, n)
        rows = tuple(tuple(m.entry(i, j) for j in range(n)) for i in range(n))
        assert m.rank() == oracles.gauss_rank(QQ, rows)


def test_inverse_round_trip_and_failure():
    rng = random.Random(19)
    p, p_inv = corpus.random_invertible(rng, QQ, 3)
    assert p * p_inv == Matrix.identity(QQ, 3)
    singular = qmat([[1, 2], [2, 4]])
    with pytest.raises(NotInvertible):
        singular.inverse()


# ---------------------------------------------------------------------------
# minimal polynomial
# ---------------------------------------------------------------------------

def test_minpoly_of_companion_is_the_polynomial():
    f = q(-2, 0, -2, 1)  # X^3 - 2X - 2
    assert minimal_polynomial(Matrix.companion(f)) == f
    g = q(5, -2, 1)
    assert minimal_polynomial(Matrix.companion(g)) == g


def test_minpoly_diagonal_collapses_repeats():
    m = Matrix.diagonal(QQ, [Fraction(1), Fraction(1), Fraction(3)])
    assert minimal_polynomial(m) == q(-1, 1) * q(-3, 1)


def test_minpoly_identity_and_zero():
    assert minimal_polynomial(Matrix.identity(QQ, 4)) == q(-1, 1)
    assert minimal_polynomial(Matrix.zeros(QQ, 3)) == q(0, 1)


def test_minpoly_rotation_plus_kernel():
    m = qmat([[0, -1, 0], [1, 0, 0], [0, 0, 0]])
    assert minimal_polynomial(m) == q(0, 1, 0, 1)  # X^3 + X = X (X^2 + 1)


def test_minpoly_matches_oracle_rational():
    rng = random.Random(23)
    for _ in range(40):
        n = rng.randint(1, 5)
        m = corpus.random_matrix(rng, QQ, n)
        rows = tuple(tuple(m.entry(i, j) for j in range(n)) for i in range(n))
        oracle = oracles.oracle_minimal_polynomial(QQ, rows)
        mine = minimal_polynomial(m)
        assert list(mine.coeffs) == oracle
        assert oracles.annihilates(QQ, oracle, rows)
        assert oracles.no_lower_degree_annihilator(QQ, rows, len(oracle) - 1)


def test_minpoly_matches_oracle_prime_field():
    for p in (3, 5, 7):
        field = PrimeField(p)
        rng = random.Random(200 + p)
        for _ in range(25):
            n = rng.randint(1, 4)
            m = corpus.random_matrix(rng, field, n, lo=0, hi=p - 1)
            rows = tuple(tuple(m.entry(i, j) for j in range(n)) for i in range(n))
            oracle = oracles.oracle_minimal_polynomial(field, rows)
            assert list(minimal_polynomial(m).coeffs) == oracle


def test_eval_poly_at_matrix():
    m = qmat([[2, 5], [-1, 0]])
    f = minimal_polynomial(m)
    assert f == q(5, -2, 1)
    assert eval_poly_at_matrix(f, m).is_zero
    assert eval_poly_at_matrix(q(3), m) == Matrix.identity(QQ, 2).scale(Fraction(3))


# ---------------------------------------------------------------------------
# structural predicates
# ---------------------------------------------------------------------------

def test_is_nilpotent():
    jordan = qmat([[0, 1], [0, 0]])
    assert is_nilpotent(jordan)
    assert is_nilpotent(Matrix.zeros(QQ, 2))
    assert not is_nilpotent(qmat([[1, 0], [0, 0]]))


def test_is_semisimple():
    rot = qmat([[0, -1], [1, 0]])
    assert is_semisimple(rot)
    assert not is_semisimple(qmat([[1, 1], [0, 1]]))
    assert is_semisimple(Matrix.diagonal(QQ, [Fraction(2), Fraction(2)]))


def test_is_semisimple_char_p_requires_k_regularity():
    field = PrimeField(7)
    f = Polynomial(field, [field.from_int(c) for c in (-1, -1, 0, 0, 0, 0, 0, 1)])
    m = Matrix.companion(f)  # minpoly X^7 - X - 1 has degree divisible by 7
    with pytest.raises(NotKRegular):
        is_semisimple(m)


def test_is_k_regular_matrix():
    assert is_k_regular_matrix(qmat([[2, 5], [-1, 0]]))
    field = PrimeField(3)
    f = Polynomial(field, [field.from_int(c) for c in (1, 2, 0, 1)])
    assert not is_k_regular_matrix(Matrix.companion(f))  # degree 3 over F_3


def test_splitting_bound_of_matrix():
    assert splitting_bound_of_matrix(qmat([[0, -1], [1, 0]])) == 2
    assert splitting_bound_of_matrix(Matrix.identity(QQ, 5)) == 1
    cubic = Matrix.companion(q(-2, 0, 0, 1))  # X^3 - 2 irreducible
    assert splitting_bound_of_matrix(cubic) == 3


def test_semisimple_generator_matches_predicates():
    rng = random.Random(29)
    for _ in range(20):
        n = rng.randint(2, 5)
        m = corpus.random_semisimple_sb2(rng, n)
        assert is_semisimple(m)
        assert splitting_bound_of_matrix(m) <= 2
