"""Seeded random corpus builders shared across the test suite.

All builders take an explicit random.Random so every test run is
reproducible; the semisimple corpus follows the block recipe: block-diagonal
of 1x1 eigenvalue blocks and irreducible 2x2 companion blocks, conjugated by
a random invertible rational matrix.
"""

import random
from fractions import Fraction

from finefrob import QQ, Matrix, is_k_regular_matrix
from finefrob.errors import NotInvertible


def rng_for(name: str, seed: int = 0) -> random.Random:
    return random.Random(f"{name}:{seed}")


def random_matrix(rng: random.Random, field, n: int, lo: int = -5, hi: int = 5) -> Matrix:
    return Matrix(
        field,
        [[field.from_int(rng.randint(lo, hi)) for _ in range(n)] for _ in range(n)],
    )


def random_invertible(rng: random.Random, field, n: int, lo: int = -3, hi: int = 3):
    """(P, P^-1) with random small entries, by rejection."""
    while True:
        p = random_matrix(rng, field, n, lo, hi)
        try:
            return p, p.inverse()
        except NotInvertible:
            continue


_SMALL_QUAD_N = [
    Fraction(1),
    Fraction(2),
    Fraction(3),
    Fraction(1, 2),
    Fraction(3, 4),
    Fraction(-1, 2),
    Fraction(-2),
    Fraction(-3),
]
_WIDE_QUAD_N = _SMALL_QUAD_N + [
    Fraction(5),
    Fraction(6),
    Fraction(10),
    Fraction(-5),
    Fraction(-6),
    Fraction(17, 4),
]


def random_semisimple_sb2(
    rng: random.Random,
    n: int,
    small: bool = False,
    positive_norms: bool = False,
) -> Matrix:
    """Random semisimple rational matrix with splitting bound <= 2.

    ``small`` keeps every eigenvalue inside |alpha| + |beta| <= 2 (checked
    exactly as |n| <= (2 - |alpha|)^2); ``positive_norms`` restricts the
    quadratic blocks to n > 0.
    """
    while True:
        blocks = []
        remaining = n
        while remaining:
            if remaining >= 2 and rng.random() < 0.6:
                blocks.append(2)
                remaining -= 2
            else:
                blocks.append(1)
                remaining -= 1
        used_gammas = set()
        used_quads = set()
        rows = [[Fraction(0)] * n for _ in range(n)]
        pos = 0
        for size in blocks:
            if size == 1:
                while True:
                    if small:
                        gamma = Fraction(rng.randint(-4, 4), 2)
                    else:
                        gamma = Fraction(rng.randint(-5, 5))
                    if gamma not in used_gammas:
                        break
                used_gammas.add(gamma)
                rows[pos][pos] = gamma
                pos += 1
            else:
                while True:
                    if small:
                        alpha = Fraction(rng.randint(-2, 2), 2)
                    else:
                        alpha = Fraction(rng.randint(-8, 8), rng.choice([1, 2]))
                    pool = _SMALL_QUAD_N if small else _WIDE_QUAD_N
                    n_val = rng.choice(pool)
                    if positive_norms and n_val < 0:
                        continue
                    if small and abs(n_val) > (2 - abs(alpha)) ** 2:
                        continue
                    if QQ.is_square(-n_val)[0]:
                        continue
                    if (alpha, n_val) in used_quads:
                        continue
                    break
                used_quads.add((alpha, n_val))
                # companion of X^2 - 2*alpha*X + (alpha^2 + n)
                rows[pos][pos + 1] = -(alpha * alpha + n_val)
                rows[pos + 1][pos] = Fraction(1)
                rows[pos + 1][pos + 1] = 2 * alpha
                pos += 2
        diag = Matrix(QQ, rows)
        if diag.is_zero:
            continue
        p, p_inv = random_invertible(rng, QQ, n)
        return p * diag * p_inv


def random_k_regular_fp(rng: random.Random, field, n: int) -> Matrix:
    """Random matrix over F_p whose minimal-polynomial factors all have
    degree prime to p, by rejection sampling."""
    while True:
        m = random_matrix(rng, field, n, 0, field.p - 1)
        if is_k_regular_matrix(m):
            return m
