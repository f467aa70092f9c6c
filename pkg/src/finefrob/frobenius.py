"""Fine decomposition of semisimple matrices into Frobenius covariants.

A nonzero semisimple matrix whose minimal polynomial factors into degrees at
most 2 splits uniquely (char != 2) as

    M = sum_i gamma_i A_i  +  sum_j [ alpha_j P_j + B_j ],

where the A_i are the projectors onto the nonzero ground eigenvalues, each
quadratic factor X^2 - 2 alpha_j X + (alpha_j^2 + n_j) contributes its
projector P_j and the vertical covariant B_j = (M - alpha_j I) P_j with
B_j^2 = -n_j P_j and B_j^3 = -n_j B_j, and A0 projects onto the kernel.
All covariants are polynomial expressions of M with ground-field entries.

``normalize`` rescales each B_j by the exact square root of n_j (requires
n_j > 0, hence an ordered ground field): the normalized covariant satisfies
the clean cube identity Bn^3 = -Bn, at the price of entries in a quadratic
extension when n_j is not a square.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CharTwo,
    FieldMismatch,
    InvalidDecomposition,
    NegativeNormComponent,
    NotSemisimple,
    SplittingBoundExceeded,
    UnorderedGroundField,
    ZeroMatrix,
)
from .jordan_chevalley import crt_projectors
from .matrix import Matrix, minimal_polynomial
from .poly import Factorization, factor, quad_factor_data
from .report import VerificationReport

__all__ = [
    "LinearCovariant",
    "QuadCovariant",
    "FineFrobenius",
    "NormalizedQuadCovariant",
    "NormalizedFineFrobenius",
    "fine_frobenius",
    "reconstruct",
    "verify_fine",
    "normalize",
    "reconstruct_normalized",
]


@dataclass(frozen=True)
class LinearCovariant:
    """Projector onto the eigenspace of one nonzero ground eigenvalue."""

    eigenvalue: object
    matrix: Matrix


@dataclass(frozen=True)
class QuadCovariant:
    """Covariant pair of one irreducible quadratic factor.

    The factor is X^2 - 2*alpha*X + (alpha^2 + n), with conjugate roots
    alpha +- sqrt(-n); projector is the factor's spectral projector and
    vertical = (M - alpha*I)*projector satisfies vertical^2 = -n*projector.
    """

    alpha: object
    n: object
    vertical: Matrix
    projector: Matrix


@dataclass(frozen=True)
class FineFrobenius:
    """The full covariant system of a semisimple splitting-bound-<=2 matrix."""

    dim: int
    field: object
    kernel_projector: Matrix  # possibly zero
    linear: tuple[LinearCovariant, ...]
    quadratic: tuple[QuadCovariant, ...]


@dataclass(frozen=True)
class NormalizedQuadCovariant:
    """Quadratic covariant rescaled by the exact square root of n."""

    alpha: object
    n: object
    imaginary: object  # exact sqrt(n): Fraction, or QuadElement with b > 0
    vertical_unit: Matrix  # vertical / sqrt(n); cubes to its own negative
    projector: Matrix


@dataclass(frozen=True)
class NormalizedFineFrobenius:
    dim: int
    field: object
    kernel_projector: Matrix
    linear: tuple[LinearCovariant, ...]
    quadratic: tuple[NormalizedQuadCovariant, ...]


def _semisimple_bounded_factorization(m: Matrix, seed: int = 0) -> Factorization:
    """Factor the minimal polynomial, enforcing squarefreeness and degrees <= 2."""
    fact = factor(minimal_polynomial(m), seed)
    if not fact.is_squarefree:
        raise NotSemisimple("minimal polynomial is not squarefree")
    if fact.max_degree > 2:
        raise SplittingBoundExceeded(
            f"an irreducible factor has degree {fact.max_degree} > 2"
        )
    return fact


def fine_frobenius(m: Matrix, seed: int = 0) -> FineFrobenius:
    """Compute all Frobenius covariants of M (see module docstring)."""
    field = m.field
    if field.characteristic == 2:  # pragma: no cover - no such field exists here
        raise CharTwo("fine decomposition needs characteristic != 2")
    if m.radical is not None:
        raise FieldMismatch("fine decomposition input must have ground-field entries")
    if m.is_zero:
        raise ZeroMatrix("the zero matrix has no fine decomposition")
    fact = _semisimple_bounded_factorization(m, seed)
    projectors = crt_projectors(fact, m)
    ident = Matrix.identity(field, m.n)
    kernel = None
    linear = []
    quadratic = []
    for (h, _), proj in zip(fact.factors, projectors):
        if h.degree == 1:
            gamma = -h.coeff(0)
            if gamma == field.zero:
                kernel = proj
            else:
                linear.append(LinearCovariant(gamma, proj))
        else:
            alpha, n = quad_factor_data(h)
            vertical = (m - ident.scale(alpha)) * proj
            quadratic.append(QuadCovariant(alpha, n, vertical, proj))
    if kernel is None:
        kernel = ident
        for cov in linear:
            kernel = kernel - cov.matrix
        for cov in quadratic:
            kernel = kernel - cov.projector
    return FineFrobenius(
        dim=m.n,
        field=field,
        kernel_projector=kernel,
        linear=tuple(linear),
        quadratic=tuple(quadratic),
    )


def verify_fine(dec: FineFrobenius) -> VerificationReport:
    """Exact per-identity re-check of the covariant system."""
    field = dec.field
    zero = Matrix.zeros(field, dec.dim)
    ident = Matrix.identity(field, dec.dim)
    a_list = [cov.matrix for cov in dec.linear]
    b_list = [cov.vertical for cov in dec.quadratic]
    checks = []

    gammas = [cov.eigenvalue for cov in dec.linear]
    checks.append(
        (
            "eigenvalues_nonzero_distinct",
            all(g != field.zero for g in gammas)
            and all(
                gammas[i] != gammas[h]
                for i in range(len(gammas))
                for h in range(i + 1, len(gammas))
            ),
        )
    )
    pairs = [(cov.alpha, cov.n) for cov in dec.quadratic]
    checks.append(
        (
            "conjugate_pairs_distinct",
            all(
                pairs[j] != pairs[l]
                for j in range(len(pairs))
                for l in range(j + 1, len(pairs))
            ),
        )
    )
    checks.append(
        (
            "nonsquare_norms",
            all(not field.is_square(-cov.n)[0] for cov in dec.quadratic),
        )
    )
    checks.append(
        (
            "linear_idempotent_orthogonal",
            all(
                a_list[i] * a_list[h] == (a_list[i] if i == h else zero)
                for i in range(len(a_list))
                for h in range(len(a_list))
            ),
        )
    )
    checks.append(
        (
            "linear_quad_orthogonal",
            all(
                a * b == zero and b * a == zero
                for a in a_list
                for b in b_list
            ),
        )
    )
    checks.append(
        (
            "quad_cross_orthogonal",
            all(
                b_list[j] * b_list[l] == zero
                for j in range(len(b_list))
                for l in range(len(b_list))
                if j != l
            ),
        )
    )
    checks.append(
        (
            "cube_identity",
            all(
                cov.vertical ** 3 == cov.vertical.scale(-cov.n)
                for cov in dec.quadratic
            ),
        )
    )
    checks.append(
        (
            "projector_consistency",
            all(
                cov.vertical ** 2 == cov.projector.scale(-cov.n)
                for cov in dec.quadratic
            ),
        )
    )
    a0 = dec.kernel_projector
    if any(cov.n == field.zero for cov in dec.quadratic):
        checks.append(("kernel_complement", False))
    else:
        complement = ident
        for a in a_list:
            complement = complement - a
        for cov in dec.quadratic:
            complement = complement - (cov.vertical ** 2).scale(
                -(field.one / cov.n)
            )
        checks.append(("kernel_complement", a0 == complement))
    checks.append(
        (
            "kernel_idempotent_orthogonal",
            a0 * a0 == a0
            and all(a0 * a == zero and a * a0 == zero for a in a_list)
            and all(a0 * b == zero and b * a0 == zero for b in b_list),
        )
    )
    checks.append(
        (
            "nonzero_covariants",
            all(not a.is_zero for a in a_list)
            and all(not b.is_zero for b in b_list),
        )
    )
    return VerificationReport(tuple(checks))


def reconstruct(dec: FineFrobenius) -> Matrix:
    """Rebuild M from the covariants after validating the record.

    Uses the literal identity M = sum gamma_i A_i + sum (alpha_j / -n_j) B_j^2
    + sum B_j (the middle term equals alpha_j P_j since B_j^2 = -n_j P_j).
    """
    rep = verify_fine(dec)
    if not rep.passed:
        raise InvalidDecomposition(
            "decomposition record fails: " + ", ".join(rep.failing())
        )
    field = dec.field
    acc = Matrix.zeros(field, dec.dim)
    for cov in dec.linear:
        acc = acc + cov.matrix.scale(cov.eigenvalue)
    for cov in dec.quadratic:
        acc = acc + (cov.vertical ** 2).scale(cov.alpha / -cov.n) + cov.vertical
    return acc


def normalize(dec: FineFrobenius) -> NormalizedFineFrobenius:
    """Rescale each quadratic covariant by the exact square root of its n.

    Only meaningful over an ordered ground field (n_j > 0 is an order
    statement); each n_j < 0 means the associated eigenvalue pair is real
    over the real closure and normalization does not apply.
    """
    field = dec.field
    if field.characteristic != 0:
        raise UnorderedGroundField("normalization requires the ordered field Q")
    quads = []
    for cov in dec.quadratic:
        n = Fraction(cov.n)
        if n < 0:
            raise NegativeNormComponent(
                f"component with n = {n} < 0 has real eigenvalues over the closure"
            )
        imaginary = field.sqrt(n)
        inv = (
            1 / imaginary
            if isinstance(imaginary, Fraction)
            else imaginary.inverse()
        )
        quads.append(
            NormalizedQuadCovariant(
                alpha=cov.alpha,
                n=cov.n,
                imaginary=imaginary,
                vertical_unit=cov.vertical.scale(inv),
                projector=cov.projector,
            )
        )
    return NormalizedFineFrobenius(
        dim=dec.dim,
        field=field,
        kernel_projector=dec.kernel_projector,
        linear=dec.linear,
        quadratic=tuple(quads),
    )


def reconstruct_normalized(dec: NormalizedFineFrobenius) -> Matrix:
    """Rebuild M as sum gamma_i A_i - sum alpha_j Bn_j^2 + sum im_j Bn_j.

    Every addend has ground-field entries (the radicals cancel), so the
    result is exactly comparable with the original matrix.
    """
    field = dec.field
    acc = Matrix.zeros(field, dec.dim)
    for cov in dec.linear:
        acc = acc + cov.matrix.scale(cov.eigenvalue)
    for cov in dec.quadratic:
        bn2 = cov.vertical_unit ** 2
        acc = acc - bn2.scale(cov.alpha) + cov.vertical_unit.scale(cov.imaginary)
    return acc
