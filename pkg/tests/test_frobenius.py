"""Fine Frobenius covariants and their normalized form."""

import dataclasses
import random
from fractions import Fraction

import pytest

import corpus
from finefrob import (
    Matrix,
    Polynomial,
    PrimeField,
    QQ,
    QuadElement,
    fine_frobenius,
    normalize,
    quad_element,
    reconstruct,
    reconstruct_normalized,
    verify_fine,
)
from finefrob.errors import (
    NegativeNormComponent,
    NotSemisimple,
    SplittingBoundExceeded,
    UnorderedGroundField,
    ZeroMatrix,
)


def qmat(rows):
    return Matrix(QQ, [[Fraction(e) for e in row] for row in rows])


# ---------------------------------------------------------------------------
# worked examples
# ---------------------------------------------------------------------------

def test_single_quadratic_block():
    # minpoly X^2 - 2X + 5: one quadratic covariant (alpha=1, n=4, B=M-I, P=I)
    m = qmat([[2, 5], [-1, 0]])
    dec = fine_frobenius(m)
    assert dec.kernel_projector.is_zero
    assert dec.linear == ()
    assert len(dec.quadratic) == 1
    cov = dec.quadratic[0]
    assert cov.alpha == Fraction(1)
    assert cov.n == Fraction(4)
    assert cov.vertical == m - Matrix.identity(QQ, 2)
    assert cov.projector == Matrix.identity(QQ, 2)
    assert verify_fine(dec).passed
    assert reconstruct(dec) == m


def test_rotation_block():
    m = qmat([[0, -1], [1, 0]])
    dec = fine_frobenius(m)
    cov = dec.quadratic[0]
    assert cov.alpha == Fraction(0) and cov.n == Fraction(1)
    assert cov.vertical == m
    assert cov.projector == Matrix.identity(QQ, 2)


def test_rotation_plus_kernel():
    m = qmat([[0, -1, 0], [1, 0, 0], [0, 0, 0]])
    dec = fine_frobenius(m)
    assert dec.kernel_projector == Matrix.diagonal(
        QQ, [Fraction(0), Fraction(0), Fraction(1)]
    )
    assert len(dec.quadratic) == 1 and dec.linear == ()
    assert reconstruct(dec) == m


def test_two_linear_covariants():
    m = Matrix.diagonal(QQ, [Fraction(2), Fraction(-3), Fraction(0)])
    dec = fine_frobenius(m)
    assert len(dec.linear) == 2
    eigs = {cov.eigenvalue for cov in dec.linear}
    assert eigs == {Fraction(2), Fraction(-3)}
    for cov in dec.linear:
        assert cov.matrix * cov.matrix == cov.matrix
    assert dec.kernel_projector == Matrix.diagonal(
        QQ, [Fraction(0), Fraction(0), Fraction(1)]
    )
    assert reconstruct(dec) == m


def test_cube_identities():
    rng = random.Random(47)
    for _ in range(15):
        n = rng.randint(2, 5)
        m = corpus.random_semisimple_sb2(rng, n)
        dec = fine_frobenius(m)
        assert verify_fine(dec).passed
        assert reconstruct(dec) == m
        for cov in dec.quadratic:
            b, p = cov.vertical, cov.projector
            assert b * b == p.scale(-cov.n)
            assert b * b * b == b.scale(-cov.n)


# ---------------------------------------------------------------------------
# preconditions
# ---------------------------------------------------------------------------

def test_zero_matrix_rejected():
    with pytest.raises(ZeroMatrix):
        fine_frobenius(Matrix.zeros(QQ, 2))


def test_not_semisimple_rejected():
    with pytest.raises(NotSemisimple):
        fine_frobenius(qmat([[1, 1], [0, 1]]))


def test_splitting_bound_exceeded():
    cubic = Matrix.companion(
        Polynomial(QQ, [Fraction(-2), Fraction(0), Fraction(0), Fraction(1)])
    )
    with pytest.raises(SplittingBoundExceeded):
        fine_frobenius(cubic)


def test_zero_checked_before_semisimplicity():
    # ZeroMatrix takes precedence: 0 is semisimple but still rejected first
    with pytest.raises(ZeroMatrix):
        fine_frobenius(Matrix.zeros(QQ, 1))


# ---------------------------------------------------------------------------
# equivariance and verification
# ---------------------------------------------------------------------------

def test_covariants_are_conjugation_equivariant():
    rng = random.Random(53)
    for _ in range(10):
        n = rng.randint(2, 5)
        m = corpus.random_semisimple_sb2(rng, n)
        p, p_inv = corpus.random_invertible(rng, QQ, n)
        dec = fine_frobenius(m)
        conj = fine_frobenius(p * m * p_inv)
        assert conj.kernel_projector == p * dec.kernel_projector * p_inv
        lin = {cov.eigenvalue: cov.matrix for cov in dec.linear}
        for cov in conj.linear:
            assert cov.matrix == p * lin[cov.eigenvalue] * p_inv
        quad = {(cov.alpha, cov.n): cov for cov in dec.quadratic}
        for cov in conj.quadratic:
            base = quad[(cov.alpha, cov.n)]
            assert cov.vertical == p * base.vertical * p_inv
            assert cov.projector == p * base.projector * p_inv


def test_verify_detects_corruption():
    m = qmat([[2, 5], [-1, 0]])
    dec = fine_frobenius(m)
    cov = dec.quadratic[0]
    bad_cov = dataclasses.replace(cov, vertical=cov.vertical + Matrix.identity(QQ, 2))
    bad = dataclasses.replace(dec, quadratic=(bad_cov,))
    report = verify_fine(bad)
    assert not report.passed
    assert dict(report.checks)["cube_identity"] is False


def test_verify_detects_wrong_kernel_projector():
    m = qmat([[0, -1, 0], [1, 0, 0], [0, 0, 0]])
    dec = fine_frobenius(m)
    bad = dataclasses.replace(dec, kernel_projector=Matrix.zeros(QQ, 3))
    report = verify_fine(bad)
    assert not report.passed
    assert dict(report.checks)["kernel_complement"] is False


# ---------------------------------------------------------------------------
# prime-field decompositions
# ---------------------------------------------------------------------------

def test_fine_frobenius_over_f7():
    field = PrimeField(7)
    # companion of X^2 - 3; 3 is a non-residue mod 7, so this is irreducible
    coeffs = [field.from_int(-3), field.from_int(0), field.from_int(1)]
    m = Matrix.companion(Polynomial(field, coeffs))
    dec = fine_frobenius(m)
    assert len(dec.quadratic) == 1
    assert verify_fine(dec).passed
    assert reconstruct(dec) == m


def test_normalize_unordered_ground_field():
    field = PrimeField(7)
    coeffs = [field.from_int(-3), field.from_int(0), field.from_int(1)]
    m = Matrix.companion(Polynomial(field, coeffs))
    with pytest.raises(UnorderedGroundField):
        normalize(fine_frobenius(m))


# ---------------------------------------------------------------------------
# normalized form
# ---------------------------------------------------------------------------

def test_normalize_worked_example():
    m = qmat([[2, 5], [-1, 0]])
    norm = normalize(fine_frobenius(m))
    cov = norm.quadratic[0]
    assert cov.imaginary == Fraction(2)  # sqrt(4)
    assert cov.vertical_unit == (m - Matrix.identity(QQ, 2)).scale(Fraction(1, 2))
    b_unit = cov.vertical_unit
    assert b_unit * b_unit * b_unit == -b_unit
    assert reconstruct_normalized(norm) == m


def test_normalize_irrational_imaginary():
    # companion of X^2 + 2: alpha = 0, n = 2, sqrt(2) enters the entries
    m = qmat([[0, -2], [1, 0]])
    norm = normalize(fine_frobenius(m))
    cov = norm.quadratic[0]
    assert cov.imaginary == quad_element(QQ, 0, 1, 2)
    assert cov.imaginary * cov.imaginary == Fraction(2)
    assert any(
        isinstance(cov.vertical_unit.entry(i, j), QuadElement)
        for i in range(2)
        for j in range(2)
    )
    assert cov.vertical_unit * cov.vertical_unit * cov.vertical_unit == -cov.vertical_unit
    assert reconstruct_normalized(norm) == m


def test_normalize_negative_norm_rejected():
    # [[0,1],[1,1]] has minpoly X^2 - X - 1: alpha = 1/2, n = -5/4 < 0
    m = qmat([[0, 1], [1, 1]])
    with pytest.raises(NegativeNormComponent):
        normalize(fine_frobenius(m))


def test_normalize_random_positive_norms():
    rng = random.Random(59)
    for _ in range(15):
        n = rng.randint(2, 5)
        m = corpus.random_semisimple_sb2(rng, n, positive_norms=True)
        norm = normalize(fine_frobenius(m))
        for cov in norm.quadratic:
            assert cov.imaginary * cov.imaginary == cov.n
            u = cov.vertical_unit
            assert u * u * u == -u
        assert reconstruct_normalized(norm) == m
