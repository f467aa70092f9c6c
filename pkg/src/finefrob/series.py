"""Convergent power series applied to matrices over valued fields.

The scalar theory: for an eigenvalue lam = alpha + beta (beta^2 = -n in the
ground field), any series f = sum a_m X^m with lam inside the convergence
domain splits into even/odd parts

    f(lam) = even + odd * beta,

where even and odd are ground-field sums in powers of alpha and (-n) — no
root of -n is ever taken.  The matrix theory (via the fine covariants):

    f(M) = sum_i f(gamma_i) A_i  +  sum_j [ even_j P_j + odd_j B_j ],

which this module evaluates with exact rational partial sums plus certified
tail bounds.  Archimedean results are embedded into arbitrary-precision
binary floats (with per-entry error bounds); p-adic results stay exact
rational with a certified valuation bound on the truncation error.

Membership in the convergence domain (the strict eigenvalue-data condition
|alpha| + |beta| < R archimedean, max(|alpha|, |beta|) < R non-archimedean)
is always decided by exact rational inequalities, never by floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import (
    FieldMismatch,
    NotConvergent,
    NotInOmegaHat,
    SchemaMismatch,
    TrivialKindUnsupported,
    UnknownRadius,
)
from .frobenius import (
    FineFrobenius,
    _semisimple_bounded_factorization,
    fine_frobenius,
    normalize,
)
from .matrix import Matrix
from .poly import quad_factor_data
from .scalar import QQ, AbsValue, QuadElement, padic_valuation

__all__ = [
    "SeriesSpec",
    "NAMED_SERIES",
    "EvenOdd",
    "ArchSeriesMatrix",
    "PadicSeriesMatrix",
    "radius_of_convergence",
    "EigenAbs",
    "eigen_abs_data",
    "in_omega_hat",
    "series_even_odd",
    "apply_series",
    "apply_named_closed_form",
    "complete_jc_of_image",
    "taylor_oracle",
    "taylor_partial_exact",
]

NAMED_SERIES = ("EXP", "SIN", "COS", "SINH", "COSH")

_TERMS_CAP = 100_000


# ---------------------------------------------------------------------------
# series specifications
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeriesSpec:
    """A power series sum a_m X^m with rational coefficients.

    Named series carry their standard radii; CUSTOM series are finite
    coefficient lists (constant first, zero beyond the list) with an optional
    user-declared radius, required whenever a convergence statement is needed.
    """

    name: str
    custom_coeffs: tuple[Fraction, ...] | None = None
    declared_radius: object = None  # Fraction, math.inf, or None

    def __post_init__(self):
        if self.name not in NAMED_SERIES + ("CUSTOM",):
            raise SchemaMismatch(f"unknown series name {self.name!r}")
        if self.name == "CUSTOM" and self.custom_coeffs is None:
            raise SchemaMismatch("CUSTOM series needs coefficients")

    # named constructors ----------------------------------------------------

    @classmethod
    def exp(cls) -> "SeriesSpec":
        return cls("EXP")

    @classmethod
    def sin(cls) -> "SeriesSpec":
        return cls("SIN")

    @classmethod
    def cos(cls) -> "SeriesSpec":
        return cls("COS")

    @classmethod
    def sinh(cls) -> "SeriesSpec":
        return cls("SINH")

    @classmethod
    def cosh(cls) -> "SeriesSpec":
        return cls("COSH")

    @classmethod
    def custom(cls, coeffs, radius=None) -> "SeriesSpec":
        cs = tuple(Fraction(c) for c in coeffs)
        if radius is not None and radius != math.inf:
            radius = Fraction(radius)
            if radius <= 0:
                raise SchemaMismatch("declared radius must be positive")
        return cls("CUSTOM", cs, radius)

    @classmethod
    def named(cls, name: str) -> "SeriesSpec":
        name = name.upper()
        if name not in NAMED_SERIES:
            raise SchemaMismatch(f"unknown named series {name!r}")
        return cls(name)

    # coefficients ----------------------------------------------------------

    def coefficient(self, m: int) -> Fraction:
        if self.name == "CUSTOM":
            if 0 <= m < len(self.custom_coeffs):
                return self.custom_coeffs[m]
            return Fraction(0)
        if self.name == "EXP":
            return Fraction(1, math.factorial(m))
        if self.name == "SIN":
            if m % 2 == 0:
                return Fraction(0)
            return Fraction((-1) ** ((m - 1) // 2), math.factorial(m))
        if self.name == "COS":
            if m % 2 == 1:
                return Fraction(0)
            return Fraction((-1) ** (m // 2), math.factorial(m))
        if self.name == "SINH":
            if m % 2 == 0:
                return Fraction(0)
            return Fraction(1, math.factorial(m))
        # COSH
        if m % 2 == 1:
            return Fraction(0)
        return Fraction(1, math.factorial(m))

    @property
    def max_index(self) -> int | None:
        """Largest index with a possibly-nonzero coefficient (None: infinite)."""
        if self.name == "CUSTOM":
            return len(self.custom_coeffs) - 1
        return None


def radius_of_convergence(spec: SeriesSpec, av: AbsValue) -> float:
    """Convergence radius as a float report value (exact logic never uses it)."""
    if spec.name == "CUSTOM":
        if spec.declared_radius is None:
            raise UnknownRadius("CUSTOM series has no declared radius")
        if spec.declared_radius == math.inf:
            return math.inf
        return float(spec.declared_radius)
    if av.kind == "arch":
        return math.inf
    if av.kind == "trivial":
        return 1.0
    return float(av.p) ** (-1.0 / (av.p - 1))


def _arch_radius_exact(spec: SeriesSpec):
    """(is_infinite, R as Fraction or None) for archimedean membership."""
    if spec.name == "CUSTOM":
        if spec.declared_radius is None:
            raise UnknownRadius("CUSTOM series has no declared radius")
        if spec.declared_radius == math.inf:
            return True, None
        return False, spec.declared_radius
    return True, None


# ---------------------------------------------------------------------------
# eigenvalue data and membership
# ---------------------------------------------------------------------------

def _spectral_components(m: Matrix, seed: int = 0):
    """[("linear", gamma) | ("quad", alpha, n)] from the minimal polynomial."""
    if m.field.characteristic != 0:
        raise FieldMismatch("valued-field analysis is defined over Q")
    fact = _semisimple_bounded_factorization(m, seed)
    components = []
    for h, _ in fact.factors:
        if h.degree == 1:
            components.append(("linear", -h.coeff(0)))
        else:
            alpha, n = quad_factor_data(h)
            components.append(("quad", alpha, n))
    return components


def _components_of_decomposition(dec: FineFrobenius):
    components = []
    if not dec.kernel_projector.is_zero:
        components.append(("linear", Fraction(0)))
    for cov in dec.linear:
        components.append(("linear", cov.eigenvalue))
    for cov in dec.quadratic:
        components.append(("quad", cov.alpha, cov.n))
    return components


@dataclass(frozen=True)
class EigenAbs:
    """Float report of (|lambda|, |alpha|, |beta|) for one factor."""

    kind: str  # "linear" | "quadratic"
    gamma: Fraction | None
    alpha: Fraction | None
    n: Fraction | None
    abs_lambda: float
    abs_alpha: float
    abs_beta: float


def eigen_abs_data(m: Matrix, av: AbsValue, seed: int = 0) -> list[EigenAbs]:
    """Per-factor absolute-value triples under the archimedean or p-adic value."""
    if av.kind == "trivial":
        raise TrivialKindUnsupported(
            "the trivial absolute value maps every nonzero value to 1"
        )
    out = []
    for comp in _spectral_components(m, seed):
        if comp[0] == "linear":
            gamma = comp[1]
            if av.kind == "arch":
                a = abs(float(gamma))
            else:
                a = _padic_abs(gamma, av.p)
            out.append(EigenAbs("linear", gamma, None, None, a, a, 0.0))
        else:
            _, alpha, n = comp
            if av.kind == "arch":
                absa = abs(float(alpha))
                absb = math.sqrt(abs(float(n)))
                if n > 0:
                    absl = math.sqrt(float(alpha * alpha + n))
                else:
                    absl = absa + math.sqrt(float(-n))
            else:
                p = av.p
                absa = _padic_abs(alpha, p)
                absb = _padic_half_abs(n, p)
                absl = _padic_half_abs(alpha * alpha + n, p)
            out.append(EigenAbs("quadratic", None, alpha, n, absl, absa, absb))
    return out


def _padic_abs(x: Fraction, p: int) -> float:
    v = padic_valuation(x, p)
    if v == math.inf:
        return 0.0
    return float(p) ** (-v)


def _padic_half_abs(x: Fraction, p: int) -> float:
    """|x|_p^(1/2) (the unique extension's value on sqrt-type quantities)."""
    v = padic_valuation(x, p)
    if v == math.inf:
        return 0.0
    return float(p) ** (-v / 2.0)


def _sqrt_bounds(f: Fraction) -> tuple[Fraction, Fraction]:
    """(lower, upper) rational bounds on sqrt(f) for f >= 0."""
    if f < 0:
        raise ValueError("negative argument")
    if f == 0:
        return Fraction(0), Fraction(0)
    uv = f.numerator * f.denominator
    r = math.isqrt(uv)
    return Fraction(r, f.denominator), Fraction(r + 1, f.denominator)


def _arch_member(comp, radius_pair) -> bool:
    """Exact |alpha| + |beta| < R test for one component."""
    infinite, radius = radius_pair
    if infinite:
        return True
    if comp[0] == "linear":
        return abs(comp[1]) < radius
    _, alpha, n = comp
    margin = radius - abs(alpha)
    return margin > 0 and abs(n) < margin * margin


def _padic_member(comp, spec: SeriesSpec, p: int) -> bool:
    """Exact max(|alpha|, |beta|) < R test for one component.

    Valuations live in (1/2)Z, so all comparisons are done on doubled
    valuations; for named series R = p^(-1/(p-1)) the condition becomes
    2v > 2/(p-1), and for declared rational R it becomes R^2 * p^(2v) > 1.
    """
    if comp[0] == "linear":
        v2_list = [_doubled_valuation(comp[1], p)]
    else:
        _, alpha, n = comp
        v2_list = [_doubled_valuation(alpha, p), padic_valuation(n, p)]
    v2 = min(v2_list)
    if spec.name != "CUSTOM":
        if v2 == math.inf:
            return True
        return v2 * (p - 1) > 2
    if spec.declared_radius is None:
        raise UnknownRadius("CUSTOM series has no declared radius")
    if spec.declared_radius == math.inf:
        return True
    if v2 == math.inf:
        return spec.declared_radius > 0
    r2 = spec.declared_radius * spec.declared_radius
    if v2 >= 0:
        return r2 * p**v2 > 1
    return r2 > p ** (-v2)


def _doubled_valuation(x: Fraction, p: int):
    v = padic_valuation(x, p)
    return math.inf if v == math.inf else 2 * v


def _components_member(components, spec: SeriesSpec, av: AbsValue) -> bool:
    if av.kind == "arch":
        radius_pair = _arch_radius_exact(spec)
        return all(_arch_member(c, radius_pair) for c in components)
    return all(_padic_member(c, spec, av.p) for c in components)


def in_omega_hat(m: Matrix, spec: SeriesSpec, av: AbsValue, seed: int = 0) -> bool:
    """Exact membership of M's eigenvalue data in the convergence domain."""
    components = _spectral_components(m, seed)
    if av.kind == "trivial":
        # every nonzero value has trivial absolute value 1, so only the zero
        # eigenvalue sits strictly inside the radius-1 domain
        return all(c[0] == "linear" and c[1] == 0 for c in components)
    return _components_member(components, spec, av)


# ---------------------------------------------------------------------------
# scalar partial sums with certified tails
# ---------------------------------------------------------------------------

def _scalar_partial(spec: SeriesSpec, x: Fraction, terms: int) -> Fraction:
    """sum_{m<=terms} a_m x^m exactly."""
    acc = Fraction(0)
    power = Fraction(1)
    for m in range(terms + 1):
        a = spec.coefficient(m)
        if a:
            acc += a * power
        power *= x
    return acc


def _even_odd_partial(
    spec: SeriesSpec, alpha: Fraction, n: Fraction, terms: int
) -> tuple[Fraction, Fraction]:
    """Exact even/odd sums: lam^m = e_m + o_m * beta with beta^2 = -n.

    Recurrence: e_{m+1} = alpha*e_m - n*o_m, o_{m+1} = e_m + alpha*o_m.
    """
    even = Fraction(0)
    odd = Fraction(0)
    e_m, o_m = Fraction(1), Fraction(0)
    for m in range(terms + 1):
        a = spec.coefficient(m)
        if a:
            even += a * e_m
            odd += a * o_m
        e_m, o_m = alpha * e_m - n * o_m, e_m + alpha * o_m
    return even, odd


def _named_tail_bound(terms: int, r: Fraction) -> Fraction:
    """Bound on sum_{m>terms} r^m / m! (valid for all five named series).

    Exact summation is carried far enough that the factorial ratio drops
    below 1/2, then a geometric comparison closes the tail.
    """
    if r <= 0:
        return Fraction(0)
    split = terms
    while Fraction(split + 2) <= 2 * r:
        split += 1
    acc = Fraction(0)
    term = r ** (terms + 1) / math.factorial(terms + 1)
    for m in range(terms + 1, split + 1):
        acc += term
        term = term * r / (m + 1)
    t2 = Fraction(split + 2)
    return acc + term * t2 / (t2 - r)


def _tail_bound(spec: SeriesSpec, terms: int, r: Fraction) -> Fraction:
    """Bound on sum_{m>terms} |a_m| r^m."""
    if spec.name != "CUSTOM":
        return _named_tail_bound(terms, r)
    acc = Fraction(0)
    for m in range(terms + 1, len(spec.custom_coeffs)):
        acc += abs(spec.custom_coeffs[m]) * r**m
    return acc


def _component_radii(components) -> list[Fraction]:
    """Rational upper bounds on |lambda| = |alpha| + |beta| per component."""
    radii = []
    for comp in components:
        if comp[0] == "linear":
            radii.append(abs(comp[1]))
        else:
            _, alpha, n = comp
            radii.append(abs(alpha) + _sqrt_bounds(abs(n))[1])
    return radii


def _auto_terms_arch(spec: SeriesSpec, radii, target: Fraction) -> int:
    if spec.max_index is not None:
        return spec.max_index
    terms = 1
    while terms <= _TERMS_CAP:
        if all(_tail_bound(spec, terms, r) <= target for r in radii):
            return terms
        terms = terms + 1 + terms // 4
    raise NotConvergent("no cutoff reached the requested tail bound")


# ---------------------------------------------------------------------------
# even/odd scalar interface
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EvenOdd:
    """Even/odd scalar sums with error bounds; iterable as (even, odd)."""

    even: object
    odd: object
    even_error: object
    odd_error: object
    terms_used: int

    def __iter__(self):
        yield self.even
        yield self.odd


def series_even_odd(
    alpha,
    n,
    spec: SeriesSpec,
    precision: int = 128,
    terms: int | None = None,
) -> EvenOdd:
    """Archimedean even/odd sums for one quadratic component, as BigFloats."""
    alpha = Fraction(alpha)
    n = Fraction(n)
    comp = ("quad", alpha, n)
    if not _arch_member(comp, _arch_radius_exact(spec)):
        raise NotConvergent("eigenvalue data leaves the convergence domain")
    r_ub = abs(alpha) + _sqrt_bounds(abs(n))[1]
    if terms is None:
        terms = _auto_terms_arch(spec, [r_ub], Fraction(1, 2 ** (precision + 8)))
    even, odd = _even_odd_partial(spec, alpha, n, terms)
    tail = _tail_bound(spec, terms, r_ub)
    beta_lb = _sqrt_bounds(abs(n))[0]
    odd_tail = tail / beta_lb if beta_lb > 0 else tail
    with mpmath.workprec(precision):
        return EvenOdd(
            even=_to_mpf(even),
            odd=_to_mpf(odd),
            even_error=_to_mpf(tail + _round_slack(precision, even)),
            odd_error=_to_mpf(odd_tail + _round_slack(precision, odd)),
            terms_used=terms,
        )


def _round_slack(precision: int, value: Fraction) -> Fraction:
    """Generous cover for the embedding roundoff of one exact value."""
    return (1 + abs(value)) / Fraction(2 ** (precision - 4))


def _to_mpf(x):
    """Exact scalar -> mpf at the ambient working precision."""
    if isinstance(x, QuadElement):
        if x.d < 0:
            raise ValueError("cannot embed a non-real quadratic element")
        return (
            _to_mpf(Fraction(x.a))
            + _to_mpf(Fraction(x.b)) * mpmath.sqrt(mpmath.mpf(x.d))
        )
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / mpmath.mpf(x.denominator)


# ---------------------------------------------------------------------------
# result containers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ArchSeriesMatrix:
    """BigFloat matrix with per-entry certified error bounds."""

    values: mpmath.matrix
    error_bounds: mpmath.matrix
    precision: int
    terms_used: int

    @property
    def n(self) -> int:
        return self.values.rows


@dataclass(frozen=True)
class PadicSeriesMatrix:
    """Exact rational partial sums with a certified truncation valuation bound."""

    values: Matrix
    p: int
    valuation_bound: object  # int, or math.inf when the result is exact
    terms_used: int

    @property
    def n(self) -> int:
        return self.values.n


# ---------------------------------------------------------------------------
# applying a series to a matrix
# ---------------------------------------------------------------------------

def _require_rational_matrix(m: Matrix):
    if m.field.characteristic != 0:
        raise FieldMismatch("series application is defined over Q")
    if m.radical is not None:
        raise FieldMismatch("series application needs ground-field entries")


def _exact_parts(dec: FineFrobenius, spec: SeriesSpec, terms: int):
    """Exact rational (horizontal, vertical) partial sums and tail data.

    Returns (h_exact, v_exact, h_tails, v_tails); the tail lists hold
    (tail_fraction, matrix) pairs whose products bound the truncation error
    entrywise for the respective part.
    """
    field = dec.field
    dim = dec.dim
    h_acc = Matrix.zeros(field, dim)
    v_acc = Matrix.zeros(field, dim)
    h_tails: list[tuple[Fraction, Matrix]] = []
    v_tails: list[tuple[Fraction, Matrix]] = []
    if not dec.kernel_projector.is_zero:
        h_acc = h_acc + dec.kernel_projector.scale(spec.coefficient(0))
    for cov in dec.linear:
        gamma = Fraction(cov.eigenvalue)
        h_acc = h_acc + cov.matrix.scale(_scalar_partial(spec, gamma, terms))
        h_tails.append((_tail_bound(spec, terms, abs(gamma)), cov.matrix))
    for cov in dec.quadratic:
        alpha = Fraction(cov.alpha)
        n = Fraction(cov.n)
        even, odd = _even_odd_partial(spec, alpha, n, terms)
        h_acc = h_acc + cov.projector.scale(even)
        v_acc = v_acc + cov.vertical.scale(odd)
        r_ub = abs(alpha) + _sqrt_bounds(abs(n))[1]
        beta_lb = _sqrt_bounds(abs(n))[0]
        tail = _tail_bound(spec, terms, r_ub)
        h_tails.append((tail, cov.projector))
        v_tails.append((tail / beta_lb, cov.vertical))
    return h_acc, v_acc, h_tails, v_tails


def _embed_with_bounds(
    exact: Matrix, tail_items, precision: int, terms: int
) -> ArchSeriesMatrix:
    dim = exact.n
    with mpmath.workprec(precision):
        values = mpmath.matrix(dim, dim)
        bounds = mpmath.matrix(dim, dim)
        for i in range(dim):
            for j in range(dim):
                val = Fraction(exact.entry(i, j))
                err = _round_slack(precision, val)
                for tail, mat in tail_items:
                    err += tail * abs(Fraction(mat.entry(i, j)))
                values[i, j] = _to_mpf(val)
                bounds[i, j] = _to_mpf(err)
    return ArchSeriesMatrix(values, bounds, precision, terms)


def _arch_apply(dec: FineFrobenius, spec: SeriesSpec, precision: int, terms):
    components = _components_of_decomposition(dec)
    if terms is None:
        radii = _component_radii(
            [c for c in components if not (c[0] == "linear" and c[1] == 0)]
        )
        terms = _auto_terms_arch(spec, radii, Fraction(1, 2 ** (precision + 8)))
    h_exact, v_exact, h_tails, v_tails = _exact_parts(dec, spec, terms)
    return h_exact, v_exact, h_tails, v_tails, terms


def apply_series(
    m: Matrix,
    spec: SeriesSpec,
    av: AbsValue,
    precision: int = 128,
    terms: int | None = None,
    seed: int = 0,
):
    """f(M) through the fine covariants; backend chosen by the absolute value.

    Archimedean: returns ArchSeriesMatrix (BigFloats + per-entry error
    bounds).  p-adic: returns PadicSeriesMatrix (exact rationals + certified
    valuation bound; ``precision`` is the requested bound).  The zero matrix
    is handled directly as a_0 * identity.
    """
    _require_rational_matrix(m)
    if av.kind == "trivial":
        raise TrivialKindUnsupported("no evaluation under the trivial absolute value")
    if m.is_zero:
        return _zero_matrix_result(m, spec, av, precision)
    dec = fine_frobenius(m, seed)
    components = _components_of_decomposition(dec)
    if not _components_member(components, spec, av):
        raise NotInOmegaHat("eigenvalue data leaves the convergence domain")
    if av.kind == "arch":
        h_exact, v_exact, h_tails, v_tails, used = _arch_apply(
            dec, spec, precision, terms
        )
        return _embed_with_bounds(
            h_exact + v_exact, h_tails + v_tails, precision, used
        )
    h_exact, v_exact, bound, used = _padic_apply(dec, spec, av.p, precision, terms)
    return PadicSeriesMatrix(h_exact + v_exact, av.p, bound, used)


def _zero_matrix_result(m: Matrix, spec: SeriesSpec, av: AbsValue, precision: int):
    a0 = spec.coefficient(0)
    exact = Matrix.identity(QQ, m.n).scale(a0)
    if av.kind == "arch":
        return _embed_with_bounds(exact, [], precision, 0)
    return PadicSeriesMatrix(exact, av.p, math.inf, 0)


# -- p-adic backend ----------------------------------------------------------

def _padic_component_valuation(comp, p: int):
    """min eigenvalue-data valuation v for the component (Fraction or inf)."""
    if comp[0] == "linear":
        return padic_valuation(comp[1], p)
    _, alpha, n = comp
    va = padic_valuation(alpha, p)
    vn = padic_valuation(n, p)
    vb = vn / 2 if vn != math.inf else math.inf
    return min(va, vb)


def _matrix_min_valuation(mat: Matrix, p: int):
    vals = [
        padic_valuation(Fraction(mat.entry(i, j)), p)
        for i in range(mat.n)
        for j in range(mat.n)
    ]
    return min(vals) if vals else math.inf


def _padic_scalar_tail_valuation(
    spec: SeriesSpec, terms: int, v: Fraction, p: int, shifted: bool
):
    """Certified lower bound on the valuation of the scalar tail past ``terms``.

    ``shifted`` marks the odd sums, whose monomials carry total weight m - 1
    instead of m.  Named coefficients satisfy v_p(a_m) >= -(m-1)/(p-1); CUSTOM
    series are finite, so their tail is an explicit minimum (inf when empty).
    """
    if v == math.inf:
        return math.inf
    s = Fraction(1, p - 1)
    if spec.name != "CUSTOM":
        m0 = terms + 1
        weight = (m0 - 1) if shifted else m0
        return weight * v - (m0 - 1) * s
    best = math.inf
    for m in range(terms + 1, len(spec.custom_coeffs)):
        a = spec.custom_coeffs[m]
        if a == 0:
            continue
        weight = (m - 1) if shifted else m
        cand = padic_valuation(a, p) + weight * v
        best = min(best, cand)
    return best


def _padic_apply(dec: FineFrobenius, spec: SeriesSpec, p: int, target, terms):
    """Exact rational H/V partial sums plus the certified valuation bound."""
    tail_sources = []
    for cov in dec.linear:
        comp = ("linear", Fraction(cov.eigenvalue))
        tail_sources.append((comp, cov.matrix, False))
    for cov in dec.quadratic:
        comp = ("quad", Fraction(cov.alpha), Fraction(cov.n))
        tail_sources.append((comp, cov.projector, False))
        tail_sources.append((comp, cov.vertical, True))

    def certified(t: int):
        best = math.inf
        for comp, mat, shifted in tail_sources:
            v = _padic_component_valuation(comp, p)
            scalar = _padic_scalar_tail_valuation(spec, t, v, p, shifted)
            shift = _matrix_min_valuation(mat, p)
            if scalar == math.inf or shift == math.inf:
                continue
            best = min(best, scalar + shift)
        return best

    if terms is None:
        terms = 0
        while terms <= _TERMS_CAP:
            if certified(terms) >= target:
                break
            terms += 1
        else:
            raise NotConvergent("no cutoff certified the requested valuation")
    bound = certified(terms)
    field = dec.field
    h_acc = Matrix.zeros(field, dec.dim)
    v_acc = Matrix.zeros(field, dec.dim)
    if not dec.kernel_projector.is_zero:
        h_acc = h_acc + dec.kernel_projector.scale(spec.coefficient(0))
    for cov in dec.linear:
        h_acc = h_acc + cov.matrix.scale(
            _scalar_partial(spec, Fraction(cov.eigenvalue), terms)
        )
    for cov in dec.quadratic:
        even, odd = _even_odd_partial(
            spec, Fraction(cov.alpha), Fraction(cov.n), terms
        )
        h_acc = h_acc + cov.projector.scale(even)
        v_acc = v_acc + cov.vertical.scale(odd)
    if bound != math.inf:
        bound = math.floor(bound)
    return h_acc, v_acc, bound, terms


# -- closed forms ------------------------------------------------------------

def apply_named_closed_form(
    m: Matrix, name: str, precision: int = 128, seed: int = 0
) -> ArchSeriesMatrix:
    """exp or cos through the normalized covariants and scalar closed forms.

    exp(lam) has real/imaginary parts e^Re cos(Im), e^Re sin(Im); cos(lam)
    has cos(Re)cosh(Im), -sin(Re)sinh(Im).  Requires every n_j > 0 (the
    normalized decomposition); otherwise NegativeNormComponent propagates and
    the caller must use apply_series instead.
    """
    name = name.upper()
    if name not in ("EXP", "COS"):
        raise SchemaMismatch("closed forms exist for EXP and COS only")
    _require_rational_matrix(m)
    dim = m.n
    with mpmath.workprec(precision + 16):
        if m.is_zero:
            values = mpmath.matrix(dim, dim)
            for i in range(dim):
                values[i, i] = mpmath.mpf(1)  # exp(0) = cos(0) = 1
        else:
            norm_dec = normalize(fine_frobenius(m, seed))
            values = mpmath.matrix(dim, dim)
            if not norm_dec.kernel_projector.is_zero:
                f0 = mpmath.mpf(1)  # f(0) for both EXP and COS
                values = values + f0 * _embed_matrix(norm_dec.kernel_projector)
            for cov in norm_dec.linear:
                g = _to_mpf(Fraction(cov.eigenvalue))
                fg = mpmath.exp(g) if name == "EXP" else mpmath.cos(g)
                values = values + fg * _embed_matrix(cov.matrix)
            for cov in norm_dec.quadratic:
                re = _to_mpf(Fraction(cov.alpha))
                im = _to_mpf(cov.imaginary)
                if name == "EXP":
                    f_re = mpmath.exp(re) * mpmath.cos(im)
                    f_im = mpmath.exp(re) * mpmath.sin(im)
                else:
                    f_re = mpmath.cos(re) * mpmath.cosh(im)
                    f_im = -mpmath.sin(re) * mpmath.sinh(im)
                bn = _embed_matrix(cov.vertical_unit)
                bn2 = _embed_matrix(cov.vertical_unit ** 2)
                values = values - f_re * bn2 + f_im * bn
        bounds = mpmath.matrix(dim, dim)
        slack = mpmath.mpf(2) ** (8 - precision)
        for i in range(dim):
            for j in range(dim):
                bounds[i, j] = slack * (1 + abs(values[i, j]))
    return ArchSeriesMatrix(values, bounds, precision, 0)


def _embed_matrix(mat: Matrix) -> mpmath.matrix:
    out = mpmath.matrix(mat.n, mat.n)
    for i in range(mat.n):
        for j in range(mat.n):
            out[i, j] = _to_mpf(mat.entry(i, j))
    return out


# -- complete JC of the image ------------------------------------------------

def complete_jc_of_image(
    m: Matrix,
    spec: SeriesSpec,
    av: AbsValue,
    precision: int = 128,
    terms: int | None = None,
    seed: int = 0,
):
    """(Hf, Vf): the horizontal/vertical split of f(M) in the completion.

    Hf collects f(gamma_i) A_i and the even sums on P_j; Vf collects the odd
    sums on B_j.  Hf + Vf equals the apply_series result.
    """
    _require_rational_matrix(m)
    if av.kind == "trivial":
        raise TrivialKindUnsupported("no evaluation under the trivial absolute value")
    if m.is_zero:
        zero = Matrix.zeros(QQ, m.n)
        h = _zero_matrix_result(m, spec, av, precision)
        if av.kind == "arch":
            return h, _embed_with_bounds(zero, [], precision, 0)
        return h, PadicSeriesMatrix(zero, av.p, math.inf, 0)
    dec = fine_frobenius(m, seed)
    components = _components_of_decomposition(dec)
    if not _components_member(components, spec, av):
        raise NotInOmegaHat("eigenvalue data leaves the convergence domain")
    if av.kind == "arch":
        h_exact, v_exact, h_tails, v_tails, used = _arch_apply(
            dec, spec, precision, terms
        )
        return (
            _embed_with_bounds(h_exact, h_tails, precision, used),
            _embed_with_bounds(v_exact, v_tails, precision, used),
        )
    h_exact, v_exact, bound, used = _padic_apply(dec, spec, av.p, precision, terms)
    return (
        PadicSeriesMatrix(h_exact, av.p, bound, used),
        PadicSeriesMatrix(v_exact, av.p, bound, used),
    )


# -- the Taylor oracle -------------------------------------------------------

def taylor_partial_exact(m: Matrix, spec: SeriesSpec, terms: int) -> Matrix:
    """sum_{k<=terms} a_k M^k by exact rational matrix powers."""
    _require_rational_matrix(m)
    acc = Matrix.zeros(m.field, m.n)
    power = Matrix.identity(m.field, m.n)
    for k in range(terms + 1):
        a = spec.coefficient(k)
        if a:
            acc = acc + power.scale(a)
        if k < terms:
            power = power * m
    return acc


def taylor_oracle(
    m: Matrix, spec: SeriesSpec, terms: int, precision: int = 128
) -> mpmath.matrix:
    """The exact partial sum embedded to BigFloats (acceptance-test oracle)."""
    exact = taylor_partial_exact(m, spec, terms)
    with mpmath.workprec(precision):
        return _embed_matrix(exact)
