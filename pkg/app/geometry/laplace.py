"""
Laplace side of the cone algebra: ε and ε̂, the transforms γ as formal sums
of exponentials over products of linear forms, the volume polynomials they
define at Λ = 0 and the directional Laurent expansion that evaluates them on
walls.

A linear form Λ is a vector of the ambient space acting by the dot product.
Measures follow the coroot-lattice convention of the relative bases, so every
coefficient stays rational.
"""
import logging
import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import mpmath
import sympy as sp
from sympy.polys.domains import QQ
from sympy.polys.ring_series import rs_exp, rs_mul, rs_series_inversion
from sympy.polys.rings import ring, xring

from ..core.config import EQUALITY_POINTS, LIMIT_DIGITS, LIMIT_STEP, LIMIT_TOLERANCE, MAX_REDRAWS
from ..core.errors import BoundarySampleError, PoleError
from ..core.rational import Vector, add, dot, format_rat, neg, scale
from ..core.sampling import RationalSampler
from .context import ConeContext
from .parabolic import lattice_volume
from .weyl import SemiStdParabolic

logger = logging.getLogger(__name__)

Parabolic = SemiStdParabolic
Denominators = tuple[Vector, ...]

# série formal truncada em t sobre ℚ
_SERIES, _t = ring("t", QQ)


def _qq(x: Fraction):
    return QQ(x.numerator, x.denominator)


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def _mp(x: Fraction) -> mpmath.mpf:
    return mpmath.mpf(x.numerator) / x.denominator


# -- rational functions in Λ ---------------------------------------------------------

class RationalFn:
    """Σ c / Π Λ(w) with rational c, keyed by the sorted tuple of denominator vectors"""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Denominators, Fraction] | None = None):
        self.terms: dict[Denominators, Fraction] = {}
        for dens, c in (terms or {}).items():
            if c:
                key = tuple(sorted(dens))
                self.terms[key] = self.terms.get(key, Fraction(0)) + c
        self.terms = {k: c for k, c in self.terms.items() if c}

    @classmethod
    def monomial(cls, coefficient, denominators: Iterable[Vector] = ()) -> "RationalFn":
        return cls({tuple(denominators): Fraction(coefficient)})

    @classmethod
    def one(cls) -> "RationalFn":
        return cls.monomial(1)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "RationalFn") -> "RationalFn":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return RationalFn(out)

    def __neg__(self) -> "RationalFn":
        return RationalFn({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "RationalFn") -> "RationalFn":
        return self + (-other)

    def __mul__(self, other) -> "RationalFn":
        if not isinstance(other, RationalFn):
            return RationalFn({k: c * Fraction(other) for k, c in self.terms.items()})
        out: dict[Denominators, Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(sorted(k1 + k2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return RationalFn(out)

    __rmul__ = __mul__

    def poles(self) -> set[Vector]:
        return {w for dens in self.terms for w in dens}

    def evaluate(self, lam: Vector) -> Fraction:
        """
        Exact value at Λ.

        :raises PoleError: when some Λ(w) vanishes
        """
        total = Fraction(0)
        for dens, c in self.terms.items():
            value = c
            for w in dens:
                d = dot(lam, w)
                if d == 0:
                    raise PoleError(f"Λ vanishes on the pole {[format_rat(x) for x in w]}")
                value /= d
            total += value
        return total

    def to_expr(self, symbols: Sequence[sp.Symbol]) -> sp.Expr:
        total = sp.Integer(0)
        for dens, c in self.terms.items():
            term = sp.Rational(c.numerator, c.denominator)
            for w in dens:
                term /= sum(sp.Rational(x.numerator, x.denominator) * s for x, s in zip(w, symbols))
            total += term
        return total


# -- finite exponential values ---------------------------------------------------------

class ExpValue:
    """Σ c_a e^{a} over finitely many rational exponents a"""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Fraction, Fraction] | None = None):
        self.terms = {Fraction(a): Fraction(c) for a, c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, c) -> "ExpValue":
        return cls({Fraction(0): Fraction(c)})

    def __add__(self, other: "ExpValue") -> "ExpValue":
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, Fraction(0)) + c
        return ExpValue(out)

    def __mul__(self, other: "ExpValue") -> "ExpValue":
        out: dict[Fraction, Fraction] = {}
        for a1, c1 in self.terms.items():
            for a2, c2 in other.terms.items():
                out[a1 + a2] = out.get(a1 + a2, Fraction(0)) + c1 * c2
        return ExpValue(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExpValue):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self) -> str:
        return f"ExpValue({self.as_dict()})"

    @property
    def rational(self) -> Fraction | None:
        """The value when only e^0 occurs"""
        if set(self.terms) <= {Fraction(0)}:
            return self.terms.get(Fraction(0), Fraction(0))
        return None

    def to_mpf(self, digits: int = LIMIT_DIGITS) -> mpmath.mpf:
        with mpmath.workdps(digits):
            return mpmath.fsum(_mp(c) * mpmath.exp(_mp(a)) for a, c in self.terms.items())

    def as_dict(self) -> dict[str, str]:
        return {format_rat(a): format_rat(c) for a, c in sorted(self.terms.items())}


# -- formal exponential sums ---------------------------------------------------------

class FormalExpSum:
    """Σ_v e^{Λ(v)} f_v(Λ), one RationalFn per exponent vector v"""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Vector, RationalFn] | None = None):
        self.terms: dict[Vector, RationalFn] = {v: f for v, f in (terms or {}).items() if f}

    @classmethod
    def exp(cls, v: Vector, coefficient: RationalFn | None = None) -> "FormalExpSum":
        return cls({tuple(v): coefficient if coefficient is not None else RationalFn.one()})

    @classmethod
    def zero(cls) -> "FormalExpSum":
        return cls()

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "FormalExpSum") -> "FormalExpSum":
        out = dict(self.terms)
        for v, f in other.terms.items():
            out[v] = out[v] + f if v in out else f
        return FormalExpSum(out)

    def __neg__(self) -> "FormalExpSum":
        return FormalExpSum({v: -f for v, f in self.terms.items()})

    def __sub__(self, other: "FormalExpSum") -> "FormalExpSum":
        return self + (-other)

    def __mul__(self, other) -> "FormalExpSum":
        if isinstance(other, FormalExpSum):
            out: dict[Vector, RationalFn] = {}
            for v1, f1 in self.terms.items():
                for v2, f2 in other.terms.items():
                    v = add(v1, v2)
                    out[v] = out[v] + f1 * f2 if v in out else f1 * f2
            return FormalExpSum(out)
        return FormalExpSum({v: f * other for v, f in self.terms.items()})

    __rmul__ = __mul__

    def shift(self, v: Vector) -> "FormalExpSum":
        """Multiply by e^{Λ(v)}"""
        return FormalExpSum({add(u, v): f for u, f in self.terms.items()})

    @property
    def dim(self) -> int | None:
        for v in self.terms:
            return len(v)
        return None

    def poles(self) -> set[Vector]:
        return {w for f in self.terms.values() for w in f.poles()}

    def max_order(self) -> int:
        return max((len(d) for f in self.terms.values() for d in f.terms), default=0)

    def evaluate(self, lam: Vector) -> ExpValue:
        """Exact value off the poles, as Σ c e^{Λ(v)}"""
        out: dict[Fraction, Fraction] = {}
        for v, f in self.terms.items():
            a = dot(lam, v)
            out[a] = out.get(a, Fraction(0)) + f.evaluate(lam)
        return ExpValue(out)

    def laurent_limit(self, base: Vector, direction: Vector) -> ExpValue:
        """
        Constant term at t = 0 of F(base + t·direction).

        Terms are grouped by the exponent value base(v); inside each group the
        negative powers of t must cancel.

        :raises PoleError: when the direction lies on a pole hyperplane or a
            negative power survives
        """
        grouped: dict[Fraction, dict[int, Fraction]] = {}
        for v, f in self.terms.items():
            a = dot(base, v)
            rate = dot(direction, v)
            group = grouped.setdefault(a, {})
            for dens, c in f.terms.items():
                for k, value in _expand_term(c, rate, dens, base, direction).items():
                    group[k] = group.get(k, Fraction(0)) + value
        out: dict[Fraction, Fraction] = {}
        for a, series in grouped.items():
            residue = {k: c for k, c in series.items() if k < 0 and c}
            if residue:
                k = min(residue)
                raise PoleError(f"t^{k} survives with coefficient {format_rat(residue[k])} at e^{format_rat(a)}")
            out[a] = series.get(0, Fraction(0))
        return ExpValue(out)

    def numeric(self, point: Vector, digits: int) -> mpmath.mpf:
        with mpmath.workdps(digits):
            total = mpmath.mpf(0)
            for v, f in self.terms.items():
                weight = mpmath.exp(_mp(dot(point, v)))
                for dens, c in f.terms.items():
                    denominator = mpmath.mpf(1)
                    for w in dens:
                        denominator *= _mp(dot(point, w))
                    total += _mp(c) * weight / denominator
            return total


def _expand_term(c: Fraction, rate: Fraction, dens: Denominators, base: Vector,
                 direction: Vector) -> dict[int, Fraction]:
    """Coefficients of t^k, k ≤ 0, in c e^{t·rate} / Π (base(w) + t·direction(w))"""
    order = 0
    factor = c
    regular = []
    for w in dens:
        b, d = dot(base, w), dot(direction, w)
        if b == 0:
            if d == 0:
                raise PoleError("direction lies on a pole hyperplane")
            order += 1
            factor /= d
        else:
            regular.append((b, d))
    prec = order + 1
    series = rs_exp(_qq(rate) * _t, _t, prec) if rate else _SERIES.one
    for b, d in regular:
        if d:
            inverse = rs_series_inversion(_SERIES(_qq(b)) + _qq(d) * _t, _t, prec)
        else:
            inverse = _SERIES(_qq(1 / b))
        series = rs_mul(series, inverse, _t, prec)
    return {k - order: factor * _frac(series.get((k,), QQ.zero)) for k in range(prec)}


def generic_form(dim: int, sampler: RationalSampler, avoid: Iterable[Vector] = (),
                 within=None) -> Vector:
    """
    Random rational Λ with Λ(w) ≠ 0 for every w in avoid.

    :param within: optional map v ↦ projection confining Λ to a subspace
    :raises BoundarySampleError: after MAX_REDRAWS draws on a pole
    """
    avoid = list(avoid)
    for _ in range(MAX_REDRAWS):
        lam = tuple(sampler.rats(dim))
        if within is not None:
            lam = within(lam)
        if all(dot(lam, w) != 0 for w in avoid):
            return lam
        logger.debug("generic form redrawn")
    raise BoundarySampleError("no generic linear form found")


def formal_equal(left: FormalExpSum, right: FormalExpSum, sampler: RationalSampler,
                 points: int = EQUALITY_POINTS, exact: bool = False) -> bool:
    """
    Equality of two formal sums: exponents must match and, exponent by
    exponent, the rational coefficients agree at `points` random Λ (or after
    sympy normalization when exact).
    """
    diff = left - right
    if not diff:
        return True
    dim = diff.dim
    if exact:
        symbols = sp.symbols(f"l0:{dim}")
        return all(sp.cancel(f.to_expr(symbols)) == 0 for f in diff.terms.values())
    poles = diff.poles()
    for _ in range(points):
        lam = generic_form(dim, sampler, poles)
        if any(f.evaluate(lam) != 0 for f in diff.terms.values()):
            return False
    return True


def limit_step() -> Fraction:
    return Fraction(LIMIT_STEP)


def numeric_limit_check(fes: FormalExpSum, base: Vector, direction: Vector,
                        exact: ExpValue) -> tuple[bool, str, str]:
    """
    Compare an exact Laurent limit with F(base + h·direction) at the configured
    step h, in enough digits to survive the cancellation of poles of order up
    to the largest denominator count.
    """
    step = limit_step()
    scale_digits = max(1, len(str(step.denominator)) - len(str(step.numerator)))
    digits = LIMIT_DIGITS + (fes.max_order() + 1) * scale_digits
    point = add(base, scale(step, direction))
    with mpmath.workdps(digits):
        numeric = fes.numeric(point, digits)
        value = exact.to_mpf(digits)
        tolerance = mpmath.mpf(LIMIT_TOLERANCE) * max(mpmath.mpf(1), abs(value))
        ok = abs(numeric - value) <= tolerance
        return bool(ok), mpmath.nstr(numeric, 30), mpmath.nstr(value, 30)


# -- ε, ε̂ and the γ transforms ---------------------------------------------------------

def epsilon(ctx: ConeContext, P: Parabolic, Q: Parabolic) -> RationalFn:
    """ε_P^Q(Λ) = Π_{α∈Δ_P^Q} Λ(α^∨)^{-1}"""
    return RationalFn.monomial(1, ctx.basis(P, Q).coroots)


def epsilon_hat(ctx: ConeContext, P: Parabolic, Q: Parabolic) -> RationalFn:
    """ε̂_P^Q(Λ) = vol(Δ̂_P^Q) Π_{ϖ∈Δ̂_P^Q} Λ(ϖ^∨)^{-1}"""
    base = ctx.basis(P, Q)
    return RationalFn.monomial(lattice_volume(base, base.coweights), base.coweights)


def gamma_PR_laplace(ctx: ConeContext, P: Parabolic, R: Parabolic, X: Vector) -> FormalExpSum:
    """γ_P^R(Λ, X) = Σ_{P⊆Q⊆R} (−1)^{a_P−a_Q} e^{Λ(X_Q^R)} ε̂_P^Q(Λ) ε_Q^R(Λ)"""
    total = FormalExpSum.zero()
    for Q in ctx.between(P, R):
        coefficient = epsilon_hat(ctx, P, Q) * epsilon(ctx, Q, R) * ctx.sign(P, Q)
        total = total + FormalExpSum.exp(ctx.project_rel(Q, R, X), coefficient)
    return total


def gamma_M_laplace(ctx: ConeContext, M: frozenset, fam, Q: Parabolic | None = None) -> FormalExpSum:
    """γ_M^Q(Λ, 𝒳) = Σ_{P∈𝒫^Q(M)} ε_P^Q(Λ) e^{Λ(X_P^Q)}, Q = G by default"""
    top = Q if Q is not None else ctx.G
    total = FormalExpSum.zero()
    for P in ctx.chambers_below(M, top):
        total = total + FormalExpSum.exp(ctx.project_rel(P, top, fam.at(ctx, P)), epsilon(ctx, P, top))
    return total


def simplicial_cone_laplace(base, apex: Vector, rays: Sequence[Vector]) -> FormalExpSum:
    """∫ e^{Λ(H)} over apex + Σ ℝ₊ r = e^{Λ(apex)} vol(rays) Π (−Λ(r))^{-1}"""
    sign = -1 if len(rays) % 2 else 1
    return FormalExpSum.exp(apex, RationalFn.monomial(sign * lattice_volume(base, rays), rays))


def phi_kappa_laplace(ctx: ConeContext, lower: Parabolic, kappa: Vector, X: Vector) -> FormalExpSum:
    """
    Transform of H ↦ φ_{M,s}^κ(H − X) on 𝔞_M^G: the cone ϖ ≤ 0 where α(κ) > 0 and
    ϖ > 0 where α(κ) < 0, spanned by ∓ the dual coroots.
    """
    from .cones import kappa_signs

    base = ctx.basis(lower, ctx.G)
    rays = [neg(c) if sign > 0 else c for sign, c in zip(kappa_signs(ctx, lower, kappa), base.coroots)]
    return simplicial_cone_laplace(base, ctx.project(lower, X), rays)


# -- volume polynomials ------------------------------------------------------------

def power_sum_poly(pairs: Iterable[tuple[Fraction, Sequence[Fraction]]], n: int,
                   gens: Sequence[sp.Symbol]) -> sp.Poly:
    """(1/n!) Σ c ℓ^n for linear forms ℓ given by their coefficients on gens"""
    R, xs = xring(list(gens), QQ)
    total = R.zero
    for c, form in pairs:
        if not c:
            continue
        linear = R.zero
        for x, g in zip(form, xs):
            if x:
                linear += _qq(x) * g
        total += _qq(c) * linear ** n
    total = total * _qq(Fraction(1, math.factorial(n)))
    terms = {monom: sp.Rational(int(q.numerator), int(q.denominator)) for monom, q in total.items()}
    return sp.Poly.from_dict(terms, *gens, domain="QQ")


def coordinate_symbols(rank: int) -> tuple[sp.Symbol, ...]:
    """x_i = α_i(X)"""
    return sp.symbols(f"x1:{rank + 1}")


def gamma_poly(ctx: ConeContext, P: Parabolic, R: Parabolic, lam: Vector) -> sp.Poly:
    """
    γ_P^R(X) = (1/n!) Σ (−1)^{a_P−a_Q} Λ(X_Q^R)^n ε̂_P^Q(Λ) ε_Q^R(Λ), n = a_P − a_R, as a
    polynomial in x_i = α_i(X) for an auxiliary Λ off the poles
    """
    rs = ctx.rs
    n = ctx.a(P) - ctx.a(R)
    pairs = []
    for Q in ctx.between(P, R):
        c = (epsilon_hat(ctx, P, Q) * epsilon(ctx, Q, R)).evaluate(lam) * ctx.sign(P, Q)
        form = [dot(lam, ctx.project_rel(Q, R, w)) for w in rs.fund_coweights]
        pairs.append((c, form))
    return power_sum_poly(pairs, n, coordinate_symbols(rs.rank))


def gamma_value(ctx: ConeContext, P: Parabolic, R: Parabolic, X: Vector, lam: Vector) -> Fraction:
    n = ctx.a(P) - ctx.a(R)
    total = Fraction(0)
    for Q in ctx.between(P, R):
        c = (epsilon_hat(ctx, P, Q) * epsilon(ctx, Q, R)).evaluate(lam) * ctx.sign(P, Q)
        total += c * dot(lam, ctx.project_rel(Q, R, X)) ** n
    return total / math.factorial(n)


def gamma_poles(ctx: ConeContext, P: Parabolic, R: Parabolic) -> set[Vector]:
    out: set[Vector] = set()
    for Q in ctx.between(P, R):
        out |= (epsilon_hat(ctx, P, Q) * epsilon(ctx, Q, R)).poles()
    return out


def gamma_M_value(ctx: ConeContext, M: frozenset, fam, lam: Vector) -> Fraction:
    """γ_M(𝒳) = (1/n!) Σ_{P∈𝒫(M)} Λ(X_P^G)^n ε_P^G(Λ), n = a_M"""
    n = ctx.a_std(frozenset(M))
    total = Fraction(0)
    for _, P in ctx.chambers(M):
        total += epsilon(ctx, P, ctx.G).evaluate(lam) * dot(lam, ctx.project(P, fam.at(ctx, P))) ** n
    return total / math.factorial(n)


def gamma_M_poles(ctx: ConeContext, M: frozenset) -> set[Vector]:
    return {w for _, P in ctx.chambers(M) for w in ctx.basis(P, ctx.G).coroots}


class GammaValue:
    """γ_M(𝒳) computed with two independent auxiliary forms"""

    def __init__(self, first: Fraction, second: Fraction, forms: tuple[Vector, Vector]):
        self.first = first
        self.second = second
        self.forms = forms

    @property
    def value(self) -> Fraction:
        return self.first

    @property
    def independent(self) -> bool:
        return self.first == self.second


def gamma_M_poly(ctx: ConeContext, M: frozenset, fam, sampler: RationalSampler) -> GammaValue:
    poles = gamma_M_poles(ctx, M)
    forms = (generic_form(ctx.rs.dim, sampler, poles), generic_form(ctx.rs.dim, sampler, poles))
    first, second = (gamma_M_value(ctx, M, fam, lam) for lam in forms)
    if first != second:
        logger.warning("γ_M depends on the auxiliary form on %s: %s ≠ %s", ctx.label, first, second)
    return GammaValue(first, second, forms)


def poly_terms(poly: sp.Poly) -> list[dict]:
    """JSON monomial list {exponents, coefficient "p/q"}"""
    out = []
    for monom, coeff in sorted(poly.terms()):
        c = sp.Rational(coeff)
        out.append({"exponents": list(monom), "coefficient": format_rat(Fraction(int(c.p), int(c.q)))})
    return out
