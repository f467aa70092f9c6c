"""Exact univariate polynomial arithmetic and factorization.

Polynomials are immutable, store their coefficients constant-first over an
explicit ground field, and support the ring operations, evaluation (at ground
or quadratic-extension scalars), derivative, composition, and exact division.

Factorization is complete for both supported ground fields:

* over Q: clear denominators, pull rational roots, then a bounded exhaustive
  evaluation-interpolation search over integer factor candidates, accelerated
  by factor-degree filtering modulo small primes and by divisor-tuple
  congruence pruning (both prune only provably impossible candidates);
* over F_p: distinct-degree splitting via modular Frobenius powers followed by
  equal-degree splitting, with p-th-root descent when the derivative vanishes.

A hard degree cap keeps the search bounded; factors are returned in a
canonical order so downstream results are deterministic.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BothZero,
    ConstantPolynomial,
    DegreeTooLarge,
    DivisionByZeroPoly,
    FactorizationFailed,
    FieldMismatch,
    NotKRegular,
    NotQuadratic,
    Reducible,
    ZeroPolynomial,
)
from .scalar import QQ, is_k_regular_degree

__all__ = [
    "Polynomial",
    "Factorization",
    "poly_gcd",
    "poly_xgcd",
    "poly_lcm",
    "poly_powmod",
    "squarefree_part",
    "factor",
    "reduced_form",
    "splitting_bound",
    "quad_factor_data",
    "k_projection_of_factor",
    "FACTOR_DEGREE_CAP",
]

FACTOR_DEGREE_CAP = 24


class Polynomial:
    """Univariate polynomial over a fixed ground field, constant term first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = [field.coerce(c) for c in coeffs]
        while cs and cs[-1] == field.zero:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field) -> "Polynomial":
        return cls(field, ())

    @classmethod
    def one(cls, field) -> "Polynomial":
        return cls(field, (field.one,))

    @classmethod
    def constant(cls, field, c) -> "Polynomial":
        return cls(field, (c,))

    @classmethod
    def x(cls, field) -> "Polynomial":
        return cls(field, (field.zero, field.one))

    # -- basic queries -------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    @property
    def leading(self):
        if self.is_zero:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return not self.is_zero and self.leading == self.field.one

    def monic(self) -> "Polynomial":
        if self.is_zero:
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        lc = self.leading
        if lc == self.field.one:
            return self
        return Polynomial(self.field, [c / lc for c in self.coeffs])

    # -- ring operations -----------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.field != other.field:
            raise FieldMismatch("polynomials over different fields")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            self.field, [self.coeff(i) + other.coeff(i) for i in range(n)]
        )

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            self.field, [self.coeff(i) - other.coeff(i) for i in range(n)]
        )

    def __neg__(self):
        return Polynomial(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            if self.is_zero or other.is_zero:
                return Polynomial.zero(self.field)
            out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == self.field.zero:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return Polynomial(self.field, out)
        try:
            c = self.field.coerce(other)
        except (TypeError, FieldMismatch):
            return NotImplemented
        return Polynomial(self.field, [c * a for a in self.coeffs])

    __rmul__ = __mul__

    def __divmod__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        if other.is_zero:
            raise DivisionByZeroPoly("polynomial division by zero")
        q = [self.field.zero] * max(len(self.coeffs) - len(other.coeffs) + 1, 1)
        rem = list(self.coeffs)
        dlc = other.leading
        dd = other.degree
        while len(rem) - 1 >= dd and any(c != self.field.zero for c in rem):
            while rem and rem[-1] == self.field.zero:
                rem.pop()
            if len(rem) - 1 < dd:
                break
            k = len(rem) - 1 - dd
            f = rem[-1] / dlc
            q[k] = f
            for i in range(len(other.coeffs)):
                rem[k + i] = rem[k + i] - f * other.coeffs[i]
            rem.pop()
        return Polynomial(self.field, q), Polynomial(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Polynomial.one(self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self) -> "Polynomial":
        return Polynomial(
            self.field,
            [self.field.from_int(i) * c for i, c in enumerate(self.coeffs)][1:],
        )

    def __call__(self, x):
        """Evaluate at a ground or quadratic-extension scalar (Horner)."""
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: "Polynomial") -> "Polynomial":
        """self(other(X)) by Horner over the polynomial ring."""
        self._check(other)
        acc = Polynomial.zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * other + Polynomial.constant(self.field, c)
        return acc

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def sort_key(self):
        return (self.degree, tuple(self.field.sort_key(c) for c in self.coeffs))

    def __repr__(self):
        if self.is_zero:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == self.field.zero:
                continue
            cs = self.field.to_str(c)
            if i == 0:
                terms.append(cs)
            elif i == 1:
                terms.append(f"{cs}*X" if cs != "1" else "X")
            else:
                terms.append(f"{cs}*X^{i}" if cs != "1" else f"X^{i}")
        return "Poly(" + " + ".join(terms) + ")"


# ---------------------------------------------------------------------------
# gcd family
# ---------------------------------------------------------------------------

def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd; raises BothZero on gcd(0, 0)."""
    if f.is_zero and g.is_zero:
        raise BothZero("gcd(0, 0) is undefined")
    a, b = f, g
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(f: Polynomial, g: Polynomial):
    """Extended gcd: returns (d, u, v) with u*f + v*g = d, d monic."""
    if f.is_zero and g.is_zero:
        raise BothZero("gcd(0, 0) is undefined")
    field = f.field
    r0, r1 = f, g
    u0, u1 = Polynomial.one(field), Polynomial.zero(field)
    v0, v1 = Polynomial.zero(field), Polynomial.one(field)
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    lc = r0.leading
    inv = field.one / lc
    return inv * r0, inv * u0, inv * v0


def poly_lcm(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.is_zero or g.is_zero:
        return Polynomial.zero(f.field)
    return ((f * g) // poly_gcd(f, g)).monic()


def poly_powmod(base: Polynomial, e: int, mod: Polynomial) -> Polynomial:
    """base**e reduced modulo mod (square and multiply)."""
    result = Polynomial.one(base.field)
    acc = base % mod
    while e:
        if e & 1:
            result = result * acc % mod
        acc = acc * acc % mod
        e >>= 1
    return result


# ---------------------------------------------------------------------------
# factorization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Factorization:
    """unit * product(poly**multiplicity) with monic irreducible factors."""

    unit: object
    factors: tuple[tuple[Polynomial, int], ...]

    def expand(self, field) -> Polynomial:
        acc = Polynomial.constant(field, self.unit)
        for poly, mult in self.factors:
            acc = acc * poly**mult
        return acc

    @property
    def is_squarefree(self) -> bool:
        return all(m == 1 for _, m in self.factors)

    @property
    def max_degree(self) -> int:
        return max((poly.degree for poly, _ in self.factors), default=0)


def factor(f: Polynomial, seed: int = 0) -> Factorization:
    """Complete factorization into monic irreducibles, canonically ordered."""
    if f.is_zero:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    if f.degree > FACTOR_DEGREE_CAP:
        raise DegreeTooLarge(
            f"degree {f.degree} exceeds the factorization cap {FACTOR_DEGREE_CAP}"
        )
    unit = f.leading
    if f.degree == 0:
        return Factorization(unit, ())
    monic_f = f.monic()
    if f.field.characteristic == 0:
        pairs = _factor_q(monic_f)
    else:
        pairs = _factor_fp(monic_f, random.Random(seed))
    ordered = tuple(sorted(pairs.items(), key=lambda kv: kv[0].sort_key()))
    return Factorization(unit, ordered)


# -- over Q ------------------------------------------------------------------

def _factor_q(f: Polynomial) -> dict[Polynomial, int]:
    """Factor a monic polynomial over Q (degree >= 1)."""
    sf = (f // poly_gcd(f, f.derivative())).monic() if f.degree > 1 else f
    irreducibles = _factor_squarefree_q(sf)
    return _multiplicities(f, irreducibles)


def _multiplicities(f: Polynomial, irreducibles) -> dict[Polynomial, int]:
    out: dict[Polynomial, int] = {}
    rem = f
    for h in irreducibles:
        e = 0
        while True:
            q, r = divmod(rem, h)
            if not r.is_zero:
                break
            rem = q
            e += 1
        out[h] = e
    if rem.degree != 0:
        raise FactorizationFailed("incomplete factor set")  # pragma: no cover
    return out


def _factor_squarefree_q(f: Polynomial) -> list[Polynomial]:
    """Monic irreducible factors of a monic squarefree polynomial over Q."""
    out: list[Polynomial] = []
    # strip a power of X
    if f.coeff(0) == QQ.zero:
        out.append(Polynomial.x(QQ))
        f = f // Polynomial.x(QQ)
    if f.degree == 0:
        return out
    coeffs = _clear_denominators(f)
    for root_num, root_den in _rational_roots(coeffs):
        out.append(Polynomial(QQ, [Fraction(-root_num, root_den), Fraction(1)]))
        f = f // out[-1]
    if f.degree == 0:
        return out
    if f.degree <= 3:
        out.append(f)  # no rational roots, so degrees 1..3 are settled
        return out
    out.extend(_monic(h) for h in _kronecker(_clear_denominators(f)))
    return out


def _clear_denominators(f: Polynomial) -> list[int]:
    """Primitive integer coefficient list with positive leading coefficient."""
    den = math.lcm(*(c.denominator for c in f.coeffs))
    ints = [int(c * den) for c in f.coeffs]
    content = math.gcd(*ints)
    ints = [c // content for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _int_eval(coeffs: list[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _monic(int_coeffs: list[int]) -> Polynomial:
    lc = int_coeffs[-1]
    return Polynomial(QQ, [Fraction(c, lc) for c in int_coeffs])


def _rational_roots(coeffs: list[int]):
    """All rational roots (num, den) of a primitive integer polynomial, den > 0."""
    roots = []
    a0, ad = coeffs[0], coeffs[-1]
    if a0 == 0:
        raise FactorizationFailed("zero constant term after X-stripping")  # pragma: no cover
    deg = len(coeffs) - 1
    for num in _signed_divisors(abs(a0)):
        for den in _divisors(abs(ad)):
            if math.gcd(num, den) != 1:
                continue
            # den^deg * f(num/den), evaluated in integers
            val = sum(c * num**i * den ** (deg - i) for i, c in enumerate(coeffs))
            if val == 0:
                roots.append((num, den))
    return roots


def _divisors(n: int) -> list[int]:
    """Positive divisors of n >= 1, ascending."""
    from .scalar import factor_int

    divs = [1]
    for q, e in factor_int(n).items():
        divs = [d * q**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def _signed_divisors(n: int) -> list[int]:
    out = []
    for d in _divisors(n):
        out.append(d)
        out.append(-d)
    return out


def _allowed_factor_degrees(coeffs: list[int]) -> set[int] | None:
    """Degrees a rational factor can have, from factorizations mod small primes.

    Returns None when the polynomial is certified irreducible by some modular
    image.  Every rational factor reduces mod a good prime to a product of a
    sub-multiset of the modular irreducible factors, so its degree must be a
    subset sum of every good prime's degree multiset.
    """
    from .scalar import PrimeField

    deg = len(coeffs) - 1
    allowed = set(range(deg + 1))
    good = 0
    for q in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        if coeffs[-1] % q == 0:
            continue
        field = PrimeField(q)
        fq = Polynomial(field, [field.from_int(c) for c in coeffs])
        if poly_gcd(fq, fq.derivative()).degree != 0:
            continue
        pairs = _factor_fp(fq.monic(), random.Random(q))
        degs = [h.degree for h in pairs]
        if degs == [deg]:
            return None
        mask = 1
        for d in degs:
            mask |= mask << d
        allowed &= {d for d in range(deg + 1) if (mask >> d) & 1}
        good += 1
        if good >= 3:
            break
    return allowed


def _kronecker(coeffs: list[int]) -> list[list[int]]:
    """Irreducible primitive integer factors of a primitive squarefree
    polynomial with no rational roots, via bounded evaluation-interpolation."""
    out: list[list[int]] = []
    g = coeffs
    allowed = _allowed_factor_degrees(g)
    if allowed is None:
        return [g]
    k = 2
    while len(g) - 1 >= 2 * k:
        if k not in allowed:
            k += 1
            continue
        h = _find_degree_k_factor(g, k)
        if h is None:
            k += 1
            continue
        out.append(h)
        g = _exact_int_div(g, h)
        if len(g) - 1 < 2:  # linear or constant leftover cannot appear here
            break
    if len(g) - 1 >= 1:
        out.append(g)
    return out


def _exact_int_div(g: list[int], h: list[int]) -> list[int]:
    q, r = divmod(Polynomial(QQ, [Fraction(c) for c in g]),
                  Polynomial(QQ, [Fraction(c) for c in h]))
    if not r.is_zero:
        raise FactorizationFailed("non-exact division")  # pragma: no cover
    return _clear_denominators(q)


def _find_degree_k_factor(g: list[int], k: int) -> list[int] | None:
    """Search for one primitive degree-k integer factor of g, or None."""
    candidates = []
    for x in itertools.chain.from_iterable((i, -i) if i else (0,) for i in range(0, 4 * k + 9)):
        v = _int_eval(g, x)
        if v != 0:
            candidates.append((abs(v), x, v))
        if len(candidates) >= 3 * (k + 1):
            break
    candidates.sort()
    points = sorted((x, v) for _, x, v in candidates[: k + 1])
    if len(points) < k + 1:
        raise FactorizationFailed("not enough evaluation points")  # pragma: no cover
    xs = [x for x, _ in points]
    vs = [v for _, v in points]
    divisor_lists = [_signed_divisors(abs(v)) for v in vs]
    divisor_lists[0] = _divisors(abs(vs[0]))  # fix the sign ambiguity h vs -h

    chosen = [0] * (k + 1)

    def dfs(j: int):
        if j == k + 1:
            h = _interpolate_int(xs, chosen, k)
            if h is not None and _divides_int(h, g):
                return h
            return None
        for d in divisor_lists[j]:
            ok = True
            for i in range(j):
                if (d - chosen[i]) % (xs[j] - xs[i]) != 0:
                    ok = False
                    break
            if not ok:
                continue
            chosen[j] = d
            found = dfs(j + 1)
            if found is not None:
                return found
        return None

    return dfs(0)


def _interpolate_int(xs: list[int], ys: list[int], k: int) -> list[int] | None:
    """Integer coefficients of the degree-k interpolant, or None if unusable."""
    field = QQ
    acc = Polynomial.zero(field)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = Polynomial.one(field)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            term = term * Polynomial(field, [Fraction(-xj), Fraction(1)])
            denom *= xi - xj
        acc = acc + (Fraction(yi) / denom) * term
    if acc.degree != k:
        return None
    ints = []
    for c in acc.coeffs:
        if c.denominator != 1:
            return None
        ints.append(c.numerator)
    if ints[-1] < 0:
        ints = [-c for c in ints]
    content = math.gcd(*ints)
    return [c // content for c in ints]


def _divides_int(h: list[int], g: list[int]) -> bool:
    hq = Polynomial(QQ, [Fraction(c) for c in h])
    gq = Polynomial(QQ, [Fraction(c) for c in g])
    return (gq % hq).is_zero


# -- over F_p ----------------------------------------------------------------

def _factor_fp(f: Polynomial, rng: random.Random) -> dict[Polynomial, int]:
    """Factor a monic polynomial over F_p (degree >= 1)."""
    field = f.field
    p = field.characteristic
    if f.degree == 0:
        return {}
    deriv = f.derivative()
    if deriv.is_zero:
        # f(X) = g(X)^p with g picking every p-th coefficient (c^(1/p) = c in F_p)
        g = Polynomial(field, f.coeffs[::p])
        return {h: e * p for h, e in _factor_fp(g, rng).items()}
    sep = (f // poly_gcd(f, deriv)).monic()
    irreducibles = _distinct_degree_split(sep, rng)
    out: dict[Polynomial, int] = {}
    rem = f
    for h in irreducibles:
        e = 0
        while True:
            q, r = divmod(rem, h)
            if not r.is_zero:
                break
            rem = q
            e += 1
        out[h] = e
    if rem.degree > 0:
        for h, e in _factor_fp(rem.monic(), rng).items():
            out[h] = out.get(h, 0) + e
    return out


def _distinct_degree_split(f: Polynomial, rng: random.Random) -> list[Polynomial]:
    """Irreducible factors of a monic squarefree polynomial over F_p."""
    field = f.field
    p = field.characteristic
    out: list[Polynomial] = []
    x = Polynomial.x(field)
    h = x % f
    d = 0
    while f.degree >= 1:
        d += 1
        if 2 * d > f.degree:
            out.append(f)
            break
        h = poly_powmod(h, p, f)
        g = poly_gcd(h - x, f)
        if g.degree > 0:
            out.extend(_equal_degree_split(g, d, rng))
            f = (f // g).monic()
            h = h % f
    return out


def _equal_degree_split(g: Polynomial, d: int, rng: random.Random) -> list[Polynomial]:
    """Split a product of distinct degree-d irreducibles (Cantor-Zassenhaus)."""
    field = g.field
    p = field.characteristic
    if g.degree == d:
        return [g.monic()]
    exp = (p**d - 1) // 2
    one = Polynomial.one(field)
    while True:
        w = Polynomial(field, [field.from_int(rng.randrange(p)) for _ in range(g.degree)])
        if w.degree < 1:
            continue
        shared = poly_gcd(w, g)
        if 0 < shared.degree < g.degree:
            left = shared
        else:
            c = poly_powmod(w, exp, g)
            left = poly_gcd(c - one, g)
            if not 0 < left.degree < g.degree:
                continue
        right = (g // left).monic()
        return _equal_degree_split(left.monic(), d, rng) + _equal_degree_split(
            right, d, rng
        )


# ---------------------------------------------------------------------------
# squarefree part and factor-level operations
# ---------------------------------------------------------------------------

def squarefree_part(f: Polynomial, seed: int = 0) -> Polynomial:
    """Monic product of the distinct irreducible factors of f.

    In characteristic 0 this is f / gcd(f, f'), which never touches the
    factorization machinery.  In characteristic p the gcd route breaks when a
    factor multiplicity is divisible by p (the derivative can vanish), so the
    result is assembled from the full factorization instead.
    """
    if f.is_zero:
        raise ZeroPolynomial("zero polynomial has no squarefree part")
    if f.degree == 0:
        return Polynomial.one(f.field)
    if f.field.characteristic == 0:
        return (f // poly_gcd(f, f.derivative())).monic()
    acc = Polynomial.one(f.field)
    for h, _ in factor(f, seed).factors:
        acc = acc * h
    return acc


def reduced_form(f: Polynomial) -> Polynomial:
    """The Tschirnhaus shift f(X - a_{d-1}/d) killing the subleading term.

    f must be monic of K-regular degree (char does not divide deg f); the
    shift is by the K-projection of f's roots, so the result has trace zero.
    """
    if f.degree < 1:
        raise ConstantPolynomial("reduced form needs degree >= 1")
    field = f.field
    d = f.degree
    if not is_k_regular_degree(d, field):
        raise NotKRegular(f"degree {d} is divisible by the characteristic")
    f = f.monic()
    shift = -f.coeff(d - 1) / field.from_int(d)
    x_plus = Polynomial(field, [shift, field.one])
    return f.compose(x_plus)


def splitting_bound(f: Polynomial, seed: int = 0) -> int:
    """Largest degree among the irreducible factors of f."""
    if f.is_zero:
        raise ZeroPolynomial("zero polynomial has no splitting bound")
    if f.degree < 1:
        raise ConstantPolynomial("constants have no splitting bound")
    return factor(f, seed).max_degree


def k_projection_of_factor(f: Polynomial):
    """-a_{d-1}/d: the common K-projection of the roots of a monic irreducible f."""
    if f.degree < 1:
        raise ConstantPolynomial("K-projection needs degree >= 1")
    d = f.degree
    if not is_k_regular_degree(d, f.field):
        raise NotKRegular(f"degree {d} is divisible by the characteristic")
    f = f.monic()
    return -f.coeff(d - 1) / f.field.from_int(d)


def quad_factor_data(f: Polynomial):
    """(alpha, n) with roots alpha +- sqrt(-n) for a monic irreducible quadratic.

    alpha = -a_1/2 is the K-projection of the roots and n = a_0 - alpha^2 is
    minus the square of the vertical part; irreducibility over K is exactly
    -n being a non-square, which is verified.
    """
    if f.degree != 2:
        raise NotQuadratic(f"degree {f.degree} polynomial is not quadratic")
    field = f.field
    f = f.monic()
    alpha = -f.coeff(1) / field.from_int(2)
    n = f.coeff(0) - alpha * alpha
    ok, _ = field.is_square(-n)
    if ok:
        raise Reducible("the quadratic splits over the ground field")
    return alpha, n
