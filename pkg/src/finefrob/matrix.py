"""Exact square matrices and minimal polynomials.

Matrices are immutable, square, and live over an explicit ground field;
entries may be ground elements or elements of one fixed quadratic extension
(mixing distinct radicals in one matrix is rejected).  The minimal polynomial
is computed deterministically from per-basis-vector Krylov relations combined
by lcm, which certifies minimality without any factorization.
"""

from __future__ import annotations

from .errors import (
    DimensionMismatch,
    FieldMismatch,
    MixedExtension,
    NotInvertible,
    NotKRegular,
)
from .poly import Polynomial, factor, poly_gcd, poly_lcm
from .scalar import QuadElement, is_k_regular_degree

__all__ = [
    "Matrix",
    "eval_poly_at_matrix",
    "minimal_polynomial",
    "is_k_regular_matrix",
    "is_semisimple",
    "is_nilpotent",
    "splitting_bound_of_matrix",
]


class Matrix:
    """An immutable n x n matrix over a ground field (or one quadratic extension)."""

    __slots__ = ("field", "n", "rows", "radical")

    def __init__(self, field, rows):
        rows = tuple(tuple(_coerce_entry(field, e) for e in row) for row in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix must be square and nonempty")
        radical = None
        for row in rows:
            for e in row:
                if isinstance(e, QuadElement):
                    if radical is None:
                        radical = e.d
                    elif radical != e.d:
                        raise MixedExtension(
                            "matrix entries mix distinct quadratic extensions"
                        )
        self.field = field
        self.n = n
        self.rows = rows
        self.radical = radical

    # -- constructors --------------------------------------------------------

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        return cls(
            field,
            [[field.one if i == j else field.zero for j in range(n)] for i in range(n)],
        )

    @classmethod
    def zeros(cls, field, n: int) -> "Matrix":
        return cls(field, [[field.zero] * n for _ in range(n)])

    @classmethod
    def diagonal(cls, field, entries) -> "Matrix":
        entries = list(entries)
        n = len(entries)
        return cls(
            field,
            [
                [entries[i] if i == j else field.zero for j in range(n)]
                for i in range(n)
            ],
        )

    @classmethod
    def companion(cls, poly: Polynomial) -> "Matrix":
        """Companion matrix of a monic polynomial of degree >= 1."""
        field = poly.field
        poly = poly.monic()
        d = poly.degree
        if d < 1:
            raise DimensionMismatch("companion matrix needs degree >= 1")
        rows = [[field.zero] * d for _ in range(d)]
        for i in range(1, d):
            rows[i][i - 1] = field.one
        for i in range(d):
            rows[i][d - 1] = -poly.coeff(i)
        return cls(field, rows)

    # -- structure -----------------------------------------------------------

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatch("matrices over different fields")
        if self.n != other.n:
            raise DimensionMismatch(f"sizes {self.n} and {other.n} differ")

    @property
    def is_zero(self) -> bool:
        z = self.field.zero
        return all(e == z for row in self.rows for e in row)

    def trace(self):
        acc = self.field.zero
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def transpose(self) -> "Matrix":
        return Matrix(
            self.field,
            [[self.rows[j][i] for j in range(self.n)] for i in range(self.n)],
        )

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check(other)
        return Matrix(
            self.field,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check(other)
        return Matrix(
            self.field,
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __neg__(self):
        return Matrix(self.field, [[-e for e in row] for row in self.rows])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            cols = other.transpose().rows
            return Matrix(
                self.field,
                [
                    [_dot(self.field, row, col) for col in cols]
                    for row in self.rows
                ],
            )
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, Matrix):
            return NotImplemented
        return self.scale(other)

    def scale(self, c) -> "Matrix":
        return Matrix(self.field, [[c * e for e in row] for row in self.rows])

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Matrix.identity(self.field, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def apply(self, vec):
        """Matrix-vector product on a tuple."""
        return tuple(_dot(self.field, row, vec) for row in self.rows)

    # -- elimination ---------------------------------------------------------

    def rank(self) -> int:
        rows = [list(r) for r in self.rows]
        z = self.field.zero
        rank = 0
        col = 0
        while col < self.n and rank < self.n:
            pivot = next((r for r in range(rank, self.n) if rows[r][col] != z), None)
            if pivot is None:
                col += 1
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            inv = self.field.one / rows[rank][col]
            rows[rank] = [inv * e for e in rows[rank]]
            for r in range(self.n):
                if r != rank and rows[r][col] != z:
                    f = rows[r][col]
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
            rank += 1
            col += 1
        return rank

    def inverse(self) -> "Matrix":
        z = self.field.zero
        rows = [list(r) + list(ident) for r, ident in
                zip(self.rows, Matrix.identity(self.field, self.n).rows)]
        for col in range(self.n):
            pivot = next((r for r in range(col, self.n) if rows[r][col] != z), None)
            if pivot is None:
                raise NotInvertible("matrix is singular")
            rows[col], rows[pivot] = rows[pivot], rows[col]
            inv = self.field.one / rows[col][col]
            rows[col] = [inv * e for e in rows[col]]
            for r in range(self.n):
                if r != col and rows[r][col] != z:
                    f = rows[r][col]
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
        return Matrix(self.field, [row[self.n :] for row in rows])

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        body = "; ".join(
            ", ".join(str(e) for e in row) for row in self.rows
        )
        return f"Matrix[{body}]"


def _coerce_entry(field, e):
    if isinstance(e, QuadElement):
        if e.field != field:
            raise FieldMismatch("entry over a different ground field")
        return e
    return field.coerce(e)


def _dot(field, u, v):
    acc = field.zero
    for a, b in zip(u, v):
        acc = acc + a * b
    return acc


# ---------------------------------------------------------------------------
# polynomial evaluation and minimal polynomials
# ---------------------------------------------------------------------------

def eval_poly_at_matrix(f: Polynomial, m: Matrix) -> Matrix:
    """f(m) by Horner; the constant term contributes a multiple of identity."""
    if f.field != m.field:
        raise FieldMismatch("polynomial and matrix over different fields")
    acc = Matrix.zeros(m.field, m.n)
    ident = Matrix.identity(m.field, m.n)
    for c in reversed(f.coeffs):
        acc = acc * m + ident.scale(c)
    return acc


def minimal_polynomial(m: Matrix) -> Polynomial:
    """Monic minimal polynomial via Krylov relations, lcm-combined per basis vector.

    For each standard basis vector the first linear dependence among
    v, Mv, M^2 v, ... is found by exact elimination (deterministic
    first-nonzero pivoting); the relation is the local annihilator, and the
    lcm over all basis vectors annihilates every vector, hence the matrix.
    """
    field = m.field
    acc = Polynomial.one(field)
    for j in range(m.n):
        if acc.degree == m.n:
            break
        vec = tuple(
            field.one if i == j else field.zero for i in range(m.n)
        )
        local = _local_annihilator(m, vec)
        acc = poly_lcm(acc, local)
    return acc


def _local_annihilator(m: Matrix, vec) -> Polynomial:
    """Monic least-degree f with f(m) vec = 0."""
    field = m.field
    z = field.zero
    # each stored row: (pivot index, reduced vector, combination over Krylov powers)
    basis: list[tuple[int, tuple, tuple]] = []
    current = vec
    combo = [field.one]
    while True:
        red = list(current)
        red_combo = list(combo) + [z] * (len(basis) + 1 - len(combo))
        for pivot, bvec, bcombo in basis:
            c = red[pivot]
            if c != z:
                red = [a - c * b for a, b in zip(red, bvec)]
                for i, bc in enumerate(bcombo):
                    red_combo[i] = red_combo[i] - c * bc
        pivot = next((i for i, a in enumerate(red) if a != z), None)
        if pivot is None:
            return Polynomial(field, red_combo).monic()
        inv = field.one / red[pivot]
        norm_vec = tuple(inv * a for a in red)
        norm_combo = tuple(inv * a for a in red_combo)
        basis.append((pivot, norm_vec, norm_combo))
        current = m.apply(current)
        combo = [z] + combo  # multiply the tracked polynomial by X


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------

def is_k_regular_matrix(m: Matrix, seed: int = 0) -> bool:
    """No irreducible factor degree of the minimal polynomial divisible by char."""
    if m.field.characteristic == 0:
        return True
    fact = factor(minimal_polynomial(m), seed)
    return all(
        is_k_regular_degree(h.degree, m.field) for h, _ in fact.factors
    )


def is_semisimple(m: Matrix) -> bool:
    """Whether the minimal polynomial is squarefree (gcd with derivative is 1).

    Requires a K-regular matrix; in positive characteristic this is verified
    (and costs a factorization) because squarefreeness and semisimplicity are
    only equivalent for separable factors.
    """
    mp = minimal_polynomial(m)
    if m.field.characteristic != 0:
        fact = factor(mp)
        if not all(is_k_regular_degree(h.degree, m.field) for h, _ in fact.factors):
            raise NotKRegular("matrix is not K-regular")
    deriv = mp.derivative()
    if deriv.is_zero:
        return False  # some multiplicity is divisible by the characteristic
    return poly_gcd(mp, deriv).degree == 0


def is_nilpotent(m: Matrix) -> bool:
    return (m ** m.n).is_zero


def splitting_bound_of_matrix(m: Matrix, seed: int = 0) -> int:
    from .poly import splitting_bound

    return splitting_bound(minimal_polynomial(m), seed)
