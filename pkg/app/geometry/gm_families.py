"""
(G,M)-families: the exponential families c(Λ, Q) = e^{Λ(X_Q)} of an
orthogonal family, their components c_P^Q and c_M^Q, the product formula,
radicial families with the two expansions of γ_M∘j and the associated
differential operator, and ω_{Q|P}^T(λ, μ) with scalar intertwining factors.
"""
import logging
import math
import re
from tokenize import TokenError
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import sympy as sp

from ..core.config import DEFAULT_SEED, GM_SAMPLE_CAP, OMEGA_MIN_WALLS
from ..core.errors import (
    FamilyFormatError,
    ParabolicInclusionError,
    PoleError,
    SpecParseError,
    UnsupportedTestFunctionError,
)
from ..core.rational import Vector, add, dot, format_rat, is_zero, neg, norm2, parse_rat, scale, sub, zero
from ..core.sampling import RationalSampler, SampleTally, run_samples
from ..models.enums import IdentityId
from .cones import a_kappa, chamber_point, hull_points, random_chain, random_levi, region_C
from .context import ConeContext
from .families import LeviFamily, OrthogonalFamily, family_from_T, random_family, validate_levi_family
from .laplace import (
    Denominators,
    ExpValue,
    FormalExpSum,
    RationalFn,
    epsilon,
    epsilon_hat,
    formal_equal,
    gamma_M_laplace,
    gamma_M_poles,
    gamma_M_poly,
    gamma_M_value,
    gamma_PR_laplace,
    gamma_poles,
    gamma_poly,
    gamma_value,
    generic_form,
    numeric_limit_check,
    phi_kappa_laplace,
    power_sum_poly,
)
from .parabolic import lattice_volume
from .polytope import polytope_volume
from .root_system import coroot_of
from .weyl import SemiStdParabolic

logger = logging.getLogger(__name__)

Parabolic = SemiStdParabolic

# acima deste posto os oráculos de volume por triangulação ficam caros demais
ORACLE_MAX_RANK = 3


# -- (G,M)-families -------------------------------------------------------------------

@dataclass(eq=False)
class GMFamily:
    """c(Λ, Q) for every Q ∈ ℱ(M), each one a formal exponential sum"""
    levi: frozenset
    values: dict[Parabolic, FormalExpSum]

    def c(self, Q: Parabolic) -> FormalExpSum:
        if Q not in self.values:
            raise ParabolicInclusionError(f"{Q} does not contain the Levi of the family")
        return self.values[Q]

    def times(self, other: "GMFamily") -> "GMFamily":
        """Pointwise product (c·d)(Λ, Q)"""
        return GMFamily(self.levi, {Q: f * other.c(Q) for Q, f in self.values.items()})


def gm_from_family(ctx: ConeContext, fam, M: frozenset) -> GMFamily:
    """c(Λ, Q) = e^{Λ(X_Q)} for Q ∈ ℱ(M)"""
    M = frozenset(M)
    return GMFamily(M, {Q: FormalExpSum.exp(fam.at(ctx, Q)) for Q in ctx.facets(M)})


def c_P_Q(ctx: ConeContext, gmf: GMFamily, P: Parabolic, Q: Parabolic) -> FormalExpSum:
    """c_P^Q(Λ) = Σ_{P⊆S⊆Q} (−1)^{a_P−a_S} ε̂_P^S(Λ) ε_S^Q(Λ) c(Λ, S)"""
    total = FormalExpSum.zero()
    for S in ctx.between(P, Q):
        total = total + gmf.c(S) * (epsilon_hat(ctx, P, S) * epsilon(ctx, S, Q) * ctx.sign(P, S))
    return total


def c_M_Q(ctx: ConeContext, gmf: GMFamily, Q: Parabolic) -> FormalExpSum:
    """c_M^Q(Λ) = Σ_{P∈𝒫^Q(M)} ε_P^Q(Λ) c(Λ, P)"""
    total = FormalExpSum.zero()
    for P in ctx.chambers_below(gmf.levi, Q):
        total = total + gmf.c(P) * epsilon(ctx, P, Q)
    return total


def c_components(ctx: ConeContext, gmf: GMFamily, Q: Parabolic, P: Parabolic | None = None) -> FormalExpSum:
    """c_P^Q when P is given, c_M^Q otherwise"""
    if P is None:
        return c_M_Q(ctx, gmf, Q)
    return c_P_Q(ctx, gmf, P, Q)


def wall_point(ctx: ConeContext, fes: FormalExpSum, sampler: RationalSampler) -> Vector:
    """A generic Λ moved onto the hyperplane of one random denominator"""
    lam = generic_form(ctx.rs.dim, sampler)
    poles = sorted(fes.poles())
    if not poles:
        return lam
    w = sampler.choice(poles)
    return sub(lam, scale(dot(lam, w) / norm2(w), w))


@dataclass
class GMValidation:
    compatible: bool
    decomposition: bool
    smooth: bool
    wall_values: tuple[dict, dict] = ()

    @property
    def passed(self) -> bool:
        return self.compatible and self.decomposition and self.smooth


def validate_gm_family(ctx: ConeContext, gmf: GMFamily, Q: Parabolic, sampler: RationalSampler) -> GMValidation:
    """
    Check on ℱ^Q(M):

    * c(Λ, P) = c(Λ, Q) for Λ ∈ 𝔞_Q and P ⊆ Q,
    * c_M^Q = Σ_{P∈𝒫^Q(M)} c_P^Q as formal sums,
    * the Laurent limits of c_M^Q at a wall point agree along two directions.
    """
    lam_Q = ctx.project(Q, generic_form(ctx.rs.dim, sampler))
    compatible = all(gmf.c(P).evaluate(lam_Q) == gmf.c(Q).evaluate(lam_Q)
                     for P in ctx.facets_below(gmf.levi, Q))
    whole = c_M_Q(ctx, gmf, Q)
    parts = FormalExpSum.zero()
    for P in ctx.chambers_below(gmf.levi, Q):
        parts = parts + c_P_Q(ctx, gmf, P, Q)
    decomposition = formal_equal(whole, parts, sampler)

    base = wall_point(ctx, whole, sampler)
    poles = whole.poles()
    first = whole.laurent_limit(base, generic_form(ctx.rs.dim, sampler, poles))
    second = whole.laurent_limit(base, generic_form(ctx.rs.dim, sampler, poles))
    return GMValidation(compatible, decomposition, first == second, (first.as_dict(), second.as_dict()))


@dataclass
class ProductFormulaReport:
    formal: bool
    at_zero: bool
    value_at_zero: ExpValue

    @property
    def passed(self) -> bool:
        return self.formal and self.at_zero


def verify_product_formula(ctx: ConeContext, c_fam, d_fam, M: frozenset, R: Parabolic,
                           sampler: RationalSampler) -> ProductFormulaReport:
    """e_M^R(Λ) = Σ_{Q∈ℱ^R(M)} c_M^Q(Λ) d_Q^R(Λ) for e = c·d, formally and at Λ = 0"""
    c = gm_from_family(ctx, c_fam, M)
    d = gm_from_family(ctx, d_fam, M)
    left = c_M_Q(ctx, c.times(d), R)
    pieces = [(c_M_Q(ctx, c, Q), c_P_Q(ctx, d, Q, R)) for Q in ctx.facets_below(M, R)]
    right = FormalExpSum.zero()
    for first, second in pieces:
        right = right + first * second
    formal = formal_equal(left, right, sampler)

    origin = zero(ctx.rs.dim)
    poles = left.poles() | right.poles()
    direction = generic_form(ctx.rs.dim, sampler, poles)
    value = left.laurent_limit(origin, direction)
    split = ExpValue()
    for first, second in pieces:
        split = split + first.laurent_limit(origin, direction) * second.laurent_limit(origin, direction)
    at_zero = value == right.laurent_limit(origin, direction) == split
    return ProductFormulaReport(formal, at_zero, value)


# -- radicial families ------------------------------------------------------------------

def reduced_roots(ctx: ConeContext, M: frozenset) -> list[Vector]:
    """ℛ_M: nonzero projections of the roots on 𝔞_M^G, shortest vector on each ray"""
    rays: dict[Vector, Vector] = {}
    levi = ctx.std(M)
    for root in ctx.rs.roots:
        p = ctx.project(levi, root)
        if is_zero(p):
            continue
        lead = next(abs(x) for x in p if x)
        key = tuple(x / lead for x in p)
        if key not in rays or norm2(p) < norm2(rays[key]):
            rays[key] = p
    return [rays[k] for k in sorted(rays)]


def radicial_roots(ctx: ConeContext, M: frozenset) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
    """(ℛ_M, coroots β^∨ = 2β/(β, β)); for M₀ the roots of G in their fixed order"""
    if not M:
        return ctx.rs.roots, ctx.rs.coroots
    if ctx.twisted:
        raise SpecParseError("twisted radicial families are carried by M₀")
    roots = tuple(reduced_roots(ctx, M))
    return roots, tuple(coroot_of(b) for b in roots)


@dataclass
class RadicialFamily:
    """z_β for β ∈ ℛ_M, aligned with ``roots``"""
    levi: frozenset
    roots: tuple[Vector, ...]
    coroots: tuple[Vector, ...]
    z: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.z) != len(self.roots):
            raise FamilyFormatError(f"expected {len(self.roots)} values z_β, got {len(self.z)}")


def radicial_family(ctx: ConeContext, M: frozenset, z) -> RadicialFamily:
    """Accept z as a list aligned with ℛ_M or as None for z ≡ 0"""
    roots, coroots = radicial_roots(ctx, frozenset(M))
    if z is None:
        values = tuple(Fraction(0) for _ in roots)
    else:
        try:
            values = tuple(parse_rat(x) if isinstance(x, str) else Fraction(x) for x in z)
        except (SpecParseError, TypeError, ValueError) as exc:
            raise FamilyFormatError(f"malformed radicial values: {exc}")
    return RadicialFamily(frozenset(M), roots, coroots, values)


def chamber_members(ctx: ConeContext, M: frozenset, roots) -> dict[Parabolic, frozenset]:
    """ℛ_P for every P ∈ 𝒫(M), as indices into roots"""
    out = {}
    for _, P in ctx.chambers(M):
        if not M:
            out[P] = frozenset(k for k in range(len(roots)) if ctx.W.root_is_positive_after(P.u, k))
        else:
            point = chamber_point(ctx, P, [1] * ctx.a(P))
            out[P] = frozenset(k for k, b in enumerate(roots) if dot(b, point) > 0)
    return out


def radicial_orthogonal_family(ctx: ConeContext, fam: RadicialFamily):
    """X_P = Σ_{β∈ℛ_P} z_β β^∨; over M₀ as a family on all of W"""
    dim = ctx.rs.dim
    if not fam.levi:
        W = ctx.W
        values = []
        for s in range(len(W)):
            X = zero(dim)
            for k, (z, c) in enumerate(zip(fam.z, fam.coroots)):
                if z and W.root_is_positive_after(s, k):
                    X = add(X, scale(z, c))
            values.append(X)
        return OrthogonalFamily(W, tuple(values))
    points = {}
    for P, members in chamber_members(ctx, fam.levi, fam.roots).items():
        X = zero(dim)
        for k in sorted(members):
            if fam.z[k]:
                X = add(X, scale(fam.z[k], fam.coroots[k]))
        points[P] = X
    levi_family = LeviFamily(fam.levi, points)
    validate_levi_family(ctx, levi_family)
    return levi_family


@dataclass
class RadicialExpansion:
    """
    γ_L∘j for a radicial family on M, computed as a power sum over the
    chambers of L (``limit_poly``) and as Σ_F vol(F) Π_{β∈F} z_β over the
    families F projecting to bases of 𝔞_L^G (``basis_poly``).
    """
    levi: frozenset
    target: frozenset
    roots: tuple[Vector, ...]
    coroots: tuple[Vector, ...]
    degree: int
    symbols: tuple[sp.Symbol, ...]
    pairs: list[tuple[Fraction, list[Fraction]]]
    limit_poly: sp.Poly
    basis_coefficients: dict[tuple[int, ...], Fraction]
    basis_poly: sp.Poly
    form: Vector = field(default=())

    @property
    def agree(self) -> bool:
        return self.limit_poly == self.basis_poly

    @property
    def multilinear(self) -> bool:
        return all(max(m) <= 1 for m in self.limit_poly.monoms())

    def value(self, z) -> Fraction:
        c = sp.Rational(self.basis_poly(*[sp.Rational(x.numerator, x.denominator) for x in z]))
        return Fraction(int(c.p), int(c.q))


def _symbols(count: int, letter: str = "z") -> tuple[sp.Symbol, ...]:
    return tuple(sp.symbols(f"{letter}1:{count + 1}"))


def _basis_expansion(ctx: ConeContext, L: frozenset, projected: list[Vector], degree: int,
                     symbols) -> tuple[dict[tuple[int, ...], Fraction], sp.Poly]:
    base = ctx.basis(ctx.std(L), ctx.G)
    coefficients: dict[tuple[int, ...], Fraction] = {}
    for F in combinations(range(len(projected)), degree):
        vol = lattice_volume(base, [projected[k] for k in F])
        if vol:
            coefficients[F] = vol
    terms = {}
    for F, vol in coefficients.items():
        monom = tuple(int(k in F) for k in range(len(symbols)))
        terms[monom] = sp.Rational(vol.numerator, vol.denominator)
    return coefficients, sp.Poly.from_dict(terms or {(0,) * len(symbols): 0}, *symbols, domain="QQ")


def _require_proper(ctx: ConeContext, L: frozenset) -> int:
    degree = ctx.a_std(frozenset(L))
    if degree == 0:
        raise SpecParseError("radicial expansions need a proper Levi")
    return degree


def radicial_poly(ctx: ConeContext, M: frozenset, sampler: RationalSampler) -> RadicialExpansion:
    """γ_M∘j(z) for the M-radicial families on an untwisted frame"""
    M = frozenset(M)
    degree = _require_proper(ctx, M)
    roots, coroots = radicial_roots(ctx, M)
    symbols = _symbols(len(roots))
    lam = generic_form(ctx.rs.dim, sampler, gamma_M_poles(ctx, M))
    members = chamber_members(ctx, M, roots)
    pairs = []
    for _, P in ctx.chambers(M):
        c = epsilon(ctx, P, ctx.G).evaluate(lam)
        pairs.append((c, [dot(lam, w) if k in members[P] else Fraction(0) for k, w in enumerate(coroots)]))
    limit = power_sum_poly(pairs, degree, symbols)
    coefficients, basis = _basis_expansion(ctx, M, list(coroots), degree, symbols)
    return RadicialExpansion(M, M, roots, coroots, degree, symbols, pairs, limit, coefficients, basis, lam)


def radicial_poly_twisted(ctx: ConeContext, L: frozenset, sampler: RationalSampler) -> RadicialExpansion:
    """
    γ_L^G∘j(z) for M₀-radicial families projected on 𝔞_L (θ₀-fixed part on a
    twisted frame): the sum runs over families F of roots whose projected
    coroots form a basis of 𝔞_L^G.
    """
    L = frozenset(L)
    degree = _require_proper(ctx, L)
    rs = ctx.rs
    roots, coroots = rs.roots, rs.coroots
    symbols = _symbols(len(roots))
    lam = generic_form(rs.dim, sampler, gamma_M_poles(ctx, L))
    pairs = []
    for _, P in ctx.chambers(L):
        c = epsilon(ctx, P, ctx.G).evaluate(lam)
        form = [dot(lam, ctx.project(P, w)) if ctx.W.root_is_positive_after(P.u, k) else Fraction(0)
                for k, w in enumerate(coroots)]
        pairs.append((c, form))
    limit = power_sum_poly(pairs, degree, symbols)
    levi = ctx.std(L)
    projected = [ctx.project(levi, w) for w in coroots]
    coefficients, basis = _basis_expansion(ctx, L, projected, degree, symbols)
    return RadicialExpansion(frozenset(), L, roots, coroots, degree, symbols, pairs, limit, coefficients, basis, lam)


def radicial_expansion(ctx: ConeContext, L: frozenset, sampler: RationalSampler,
                       projected: bool = False) -> RadicialExpansion:
    """M = L on untwisted frames, M₀ projected on L otherwise or on request"""
    if ctx.twisted or projected:
        return radicial_poly_twisted(ctx, L, sampler)
    return radicial_poly(ctx, L, sampler)


# -- the differential operator D_L ---------------------------------------------------------

_IDENTIFIER = re.compile(r"[A-Za-z_]\w*")
_ALLOWED_TEXT = re.compile(r"^[\w\s+\-*/^().]*$")


def parse_test_function(text: str, count: int) -> tuple[sp.Expr, tuple[sp.Symbol, ...]]:
    """
    Parse g = p(y)·exp(q(y)) with p, q rational polynomials in y1..yN.

    :raises UnsupportedTestFunctionError: outside that class
    """
    ys = _symbols(count, "y")
    names = {str(y): y for y in ys}
    text = (text or "").strip()
    if not text or not _ALLOWED_TEXT.match(text):
        raise UnsupportedTestFunctionError(f"unsupported test function {text!r}")
    unknown = {name for name in _IDENTIFIER.findall(text) if name not in names and name != "exp"}
    if unknown:
        raise UnsupportedTestFunctionError(f"unknown names {sorted(unknown)} (use y1..y{count} and exp)")
    try:
        expr = sp.sympify(text.replace("^", "**"), locals={**names, "exp": sp.exp})
    except (sp.SympifyError, SyntaxError, TokenError, TypeError) as exc:
        raise UnsupportedTestFunctionError(f"cannot parse {text!r}: {exc}")
    polynomial, exponent = sp.Integer(1), sp.Integer(0)
    for factor in sp.Mul.make_args(sp.powsimp(expr, combine="exp")):
        if isinstance(factor, sp.exp):
            exponent += factor.args[0]
        else:
            polynomial *= factor
    if not (polynomial.is_polynomial(*ys) and exponent.is_polynomial(*ys)):
        raise UnsupportedTestFunctionError(f"{text!r} is not a polynomial times exp(polynomial)")
    return expr, ys


@dataclass
class DifferentialReport:
    limit: sp.Expr
    derivative: sp.Expr

    @property
    def agree(self) -> bool:
        return sp.simplify(self.limit - self.derivative) == 0


def radicial_differential(expansion: RadicialExpansion, g_text: str) -> DifferentialReport:
    """
    c_L^G(0) for c(Λ, P) = g(j*ι_P Λ), computed as Σ_P ε_P(Λ₀)·[tⁿ] g(t ζ^P)
    with ζ^P the coefficients of ℓ_P, against (D_L g)(0) with
    D_L = Σ_F vol(F) Π_{β∈F} ∂/∂y_β.
    """
    g, ys = parse_test_function(g_text, len(expansion.roots))
    n = expansion.degree
    t = sp.Symbol("t")
    origin = {y: 0 for y in ys}
    limit = sp.Integer(0)
    for c, form in expansion.pairs:
        along = g.subs({y: t * sp.Rational(x.numerator, x.denominator) for y, x in zip(ys, form)},
                       simultaneous=True)
        coefficient = sp.diff(along, t, n).subs(t, 0) / math.factorial(n)
        limit += sp.Rational(c.numerator, c.denominator) * coefficient
    derivative = sp.Integer(0)
    for F, vol in expansion.basis_coefficients.items():
        derivative += sp.Rational(vol.numerator, vol.denominator) * sp.diff(g, *[ys[k] for k in F]).subs(origin)
    return DifferentialReport(sp.simplify(limit), sp.simplify(derivative))


# -- ω_{Q|P}^T(λ, μ), scalar model ------------------------------------------------------------

def omega_form(ctx: ConeContext, T: Vector, P: frozenset, Q: frozenset) -> FormalExpSum:
    """
    Σ_R Σ_{s∈W(𝔞_P,𝔞_R)} Σ_{t∈W(𝔞_Q,𝔞_R)} e^{⟨sλ−tμ, T⟩} ε_R^G(sλ − tμ) in the
    joint variable (λ, μ); zero unless P and Q are associated.
    """
    W = ctx.W
    P, Q = frozenset(P), frozenset(Q)
    associated = W.associated_standard(P)
    if Q not in associated:
        return FormalExpSum.zero()
    terms: dict[Vector, dict[Denominators, Fraction]] = {}
    for R in associated:
        coroots = ctx.basis(ctx.std(R), ctx.G).coroots
        def moved(s):
            s_inv = W.inv(s)
            return W.act(s_inv, T), [W.act(s_inv, c) for c in coroots]

        left = [moved(s) for s in W.weyl_set_PQ(P, R)]
        right = [moved(t) for t in W.weyl_set_PQ(Q, R)]
        for sT, sc in left:
            for tT, tc in right:
                v = tuple(sT) + neg(tT)
                dens = tuple(sorted(tuple(a) + neg(b) for a, b in zip(sc, tc)))
                bucket = terms.setdefault(v, {})
                bucket[dens] = bucket.get(dens, Fraction(0)) + 1
    return FormalExpSum({v: RationalFn(d) for v, d in terms.items()})


def omega_direction(ctx: ConeContext, form: FormalExpSum, P: frozenset, Q: frozenset,
                    sampler: RationalSampler) -> Vector:
    """Generic (λ₀, μ₀) ∈ 𝔞_P × 𝔞_Q off every pole of the form"""
    d = ctx.rs.dim
    left, right = ctx.std(P), ctx.std(Q)

    def within(v: Vector) -> Vector:
        return tuple(ctx.project(left, v[:d])) + tuple(ctx.project(right, v[d:]))

    return generic_form(2 * d, sampler, form.poles(), within=within)


def omega_scalar(ctx: ConeContext, T: Vector, P: frozenset, Q: frozenset, lam: Vector, mu: Vector,
                 direction: Vector | None = None, sampler: RationalSampler | None = None) -> ExpValue:
    """ω_{Q|P}^T(λ, μ), the removable singularities filled in by the directional Laurent limit"""
    form = omega_form(ctx, T, P, Q)
    if not form:
        return ExpValue()
    if direction is None:
        direction = omega_direction(ctx, form, P, Q, sampler or RationalSampler(DEFAULT_SEED))
    return form.laurent_limit(tuple(lam) + tuple(mu), direction)


def omega_regrouped(ctx: ConeContext, T: Vector, P: frozenset, Q: frozenset, lam: Vector, mu: Vector,
                    direction: Vector) -> ExpValue:
    """Σ_{u∈W(𝔞_P,𝔞_Q)} γ_Q(uλ − μ, 𝒳_T): the same value through (G, Q)-families"""
    W = ctx.W
    d = ctx.rs.dim
    lam0, mu0 = direction[:d], direction[d:]
    gamma = gamma_M_laplace(ctx, frozenset(Q), family_from_T(W, T))
    total = ExpValue()
    for u in W.weyl_set_PQ(frozenset(P), frozenset(Q)):
        total = total + gamma.laurent_limit(sub(W.act(u, lam), mu), sub(W.act(u, lam0), mu0))
    return total


# -- sampled verification ---------------------------------------------------------------

def check_epsilon_sign(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    P, Q = random_chain(ctx, sampler, 2)
    eps, eps_hat = epsilon(ctx, P, Q), epsilon_hat(ctx, P, Q)
    collapse = RationalFn()
    for S in ctx.between(P, Q):
        collapse = collapse + epsilon_hat(ctx, P, S) * epsilon(ctx, S, Q) * ctx.sign(P, S)
    lam = generic_form(ctx.rs.dim, sampler, eps.poles() | eps_hat.poles() | collapse.poles())
    sign = ctx.sign(P, Q)
    ok = eps.evaluate(neg(lam)) == sign * eps.evaluate(lam)
    ok = ok and eps_hat.evaluate(neg(lam)) == sign * eps_hat.evaluate(lam)
    # γ_P^Q(Λ, 0) = [P = Q]
    ok = ok and collapse.evaluate(lam) == int(P == Q)
    tally.record(ok, P=P.std, Q=Q.std, u=P.u, lam=lam)


def check_gamma_poly(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    P, R = random_chain(ctx, sampler, 2)
    rs = ctx.rs
    X = ctx.fixed(sampler.alpha_point(rs))
    n = ctx.a(P) - ctx.a(R)
    poles = gamma_poles(ctx, P, R)
    lam1, lam2 = generic_form(rs.dim, sampler, poles), generic_form(rs.dim, sampler, poles)
    first, second = gamma_poly(ctx, P, R, lam1), gamma_poly(ctx, P, R, lam2)
    value = gamma_value(ctx, P, R, X, lam1)
    ok = first == second
    ok = ok and first.is_homogeneous and (first.is_zero or first.total_degree() == n)
    at_X = first(*[sp.Rational(x.numerator, x.denominator) for x in rs.alpha_values(X)])
    ok = ok and sp.Rational(at_X) == sp.Rational(value.numerator, value.denominator)
    c = sampler.positive()
    ok = ok and gamma_value(ctx, P, R, scale(c, X), lam2) == c ** n * value
    ok = ok and gamma_PR_laplace(ctx, P, R, X).laurent_limit(zero(rs.dim), lam2) == ExpValue.constant(value)
    volume = None
    if P.is_standard and rs.rank <= ORACLE_MAX_RANK:
        regular = ctx.fixed(sampler.regular_point(rs))
        volume = polytope_volume(region_C(ctx, P, R, R, regular).vertices)
        ok = ok and volume == gamma_value(ctx, P, R, regular, lam1)
    tally.record(ok, P=P.std, R=R.std, u=P.u, X=X, gamma=value, volume=volume)


def check_cone_laplace(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    M = random_levi(ctx, sampler)
    fam = random_family(ctx, sampler, regular=False)
    kappa = ctx.project(ctx.std(M), ctx.fixed(sampler.alpha_point(ctx.rs)))
    total = FormalExpSum.zero()
    ok = True
    for _, lower in ctx.chambers(M):
        X = fam.at(ctx, lower)
        signed = phi_kappa_laplace(ctx, lower, kappa, X) * (-1 if a_kappa(ctx, lower, kappa) % 2 else 1)
        ok = ok and formal_equal(signed, FormalExpSum.exp(X, epsilon(ctx, lower, ctx.G)), sampler)
        total = total + signed
    ok = ok and formal_equal(total, gamma_M_laplace(ctx, M, fam), sampler)
    tally.record(ok, M=M, kappa=kappa)


def check_gamma_M_poly(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    M = random_levi(ctx, sampler)
    rs = ctx.rs
    fam = random_family(ctx, sampler, regular=True)
    result = gamma_M_poly(ctx, M, fam, sampler)
    ok = result.independent
    Q = sampler.choice(ctx.facets(M))
    split = FormalExpSum.zero()
    for P in ctx.chambers_below(M, Q):
        split = split + gamma_PR_laplace(ctx, P, Q, fam.at(ctx, P))
    ok = ok and formal_equal(gamma_M_laplace(ctx, M, fam, Q), split, sampler)
    whole = gamma_M_laplace(ctx, M, fam)
    direction = generic_form(rs.dim, sampler, whole.poles())
    ok = ok and whole.laurent_limit(zero(rs.dim), direction) == ExpValue.constant(result.value)
    volume = None
    if rs.rank <= ORACLE_MAX_RANK:
        volume = polytope_volume(hull_points(ctx, M, fam))
        ok = ok and volume == result.value
    tally.record(ok, M=M, Q=Q.std, u=Q.u, gamma=result.value, volume=volume,
                 forms=list(result.forms))


def check_gm_decomposition(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    M = random_levi(ctx, sampler)
    fam = random_family(ctx, sampler, regular=False)
    gmf = gm_from_family(ctx, fam, M)
    Q = sampler.choice(ctx.facets(M))
    report = validate_gm_family(ctx, gmf, Q, sampler)
    ok = report.passed
    # c_P^Q = e^{Λ(X_Q)} γ_P^Q(Λ, X_P)
    P = sampler.choice(ctx.chambers_below(M, Q))
    expected = gamma_PR_laplace(ctx, P, Q, fam.at(ctx, P)).shift(fam.at(ctx, Q))
    ok = ok and formal_equal(c_P_Q(ctx, gmf, P, Q), expected, sampler)
    tally.record(ok, M=M, Q=Q.std, u=Q.u, compatible=report.compatible,
                 decomposition=report.decomposition, smooth=report.smooth, wall_values=list(report.wall_values))


def check_product_formula(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    M = random_levi(ctx, sampler)
    R = sampler.choice(ctx.facets(M))
    c_fam = random_family(ctx, sampler, regular=True)
    d_fam = random_family(ctx, sampler, regular=False)
    report = verify_product_formula(ctx, c_fam, d_fam, M, R, sampler)
    tally.record(report.passed, M=M, R=R.std, u=R.u, formal=report.formal, at_zero=report.at_zero,
                 value=report.value_at_zero.as_dict())


def radicial_levis(ctx: ConeContext) -> list[frozenset]:
    """Proper Levis for radicial checks; beyond the oracle rank only a_L ≤ 2"""
    return [S for S in ctx.standard_subsets()
            if 0 < ctx.a_std(S) and (ctx.rs.rank <= ORACLE_MAX_RANK or ctx.a_std(S) <= 2)]


def _random_z(count: int, sampler: RationalSampler) -> tuple[Fraction, ...]:
    return tuple(sampler.rat() for _ in range(count))


def check_radicial(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    L = sampler.choice(radicial_levis(ctx))
    projected = not ctx.twisted and sampler.rng.random() < 0.5
    expansion = radicial_expansion(ctx, L, sampler, projected=projected)
    z = _random_z(len(expansion.roots), sampler)
    family = radicial_family(ctx, expansion.levi, z)
    points = radicial_orthogonal_family(ctx, family)
    lam = generic_form(ctx.rs.dim, sampler, gamma_M_poles(ctx, L))
    direct = gamma_M_value(ctx, L, points, lam)
    ok = expansion.agree and expansion.multilinear and expansion.value(z) == direct
    tally.record(ok, L=L, M=expansion.levi, z=z, gamma=direct, bases=len(expansion.basis_coefficients))


def random_test_function(expansion: RadicialExpansion, sampler: RationalSampler) -> str:
    """One or two degree-a_L monomials in y, sometimes times exp of a random quadratic"""
    count = len(expansion.roots)
    monomials = []
    for _ in range(1 + sampler.rng.randrange(2)):
        if expansion.basis_coefficients and sampler.rng.random() < 0.5:
            F = sampler.choice(sorted(expansion.basis_coefficients))
        else:
            F = tuple(sampler.rng.randrange(count) for _ in range(expansion.degree))
        factors = "*".join(f"y{k + 1}" for k in F) or "1"
        monomials.append(f"({format_rat(sampler.nonzero())})*{factors}")
    text = " + ".join(monomials)
    if sampler.rng.random() < 0.5:
        i, j = sampler.rng.randrange(count), sampler.rng.randrange(count)
        q = f"({format_rat(sampler.rat())})*y{i + 1} + ({format_rat(sampler.rat())})*y{j + 1}**2"
        text = f"({text})*exp({q})"
    return text


def check_radicial_differential(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    L = sampler.choice(radicial_levis(ctx))
    expansion = radicial_expansion(ctx, L, sampler)
    g = random_test_function(expansion, sampler)
    report = radicial_differential(expansion, g)
    tally.record(report.agree, L=L, g=g, limit=str(report.limit), derivative=str(report.derivative))


def _omega_parameters(ctx: ConeContext, sampler: RationalSampler):
    """
    (P, Q, λ, μ) with μ = uλ − ν and ν = 0 or ν on a wall of 𝔞_Q, so that the
    base point sits on poles of the form; sometimes Q is not associated.
    """
    rs = ctx.rs
    W = ctx.W
    # P = G não tem polos
    P = sampler.choice([S for S in ctx.standard_subsets() if S != ctx.full] or ctx.standard_subsets())
    associated = W.associated_standard(P)
    lam = ctx.project(ctx.std(P), sampler.alpha_point(rs))
    if sampler.rng.random() < 0.15:
        Q = sampler.choice(ctx.standard_subsets())
        if Q not in associated:
            return P, Q, lam, ctx.project(ctx.std(Q), sampler.alpha_point(rs))
    Q = sampler.choice(associated)
    u = sampler.choice(W.weyl_set_PQ(P, Q))
    nu = zero(rs.dim)
    if sampler.rng.random() < 0.75:
        _, chamber = sampler.choice(ctx.chambers(Q))
        coroots = ctx.basis(chamber, ctx.G).coroots
        if coroots:
            c = sampler.choice(coroots)
            nu = ctx.project(ctx.std(Q), sampler.alpha_point(rs))
            nu = sub(nu, scale(dot(nu, c) / norm2(c), c))
    return P, Q, lam, sub(W.act(u, lam), nu)


def on_wall(form: FormalExpSum, base: Vector) -> bool:
    return any(dot(base, w) == 0 for w in form.poles())


def check_omega(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    P, Q, lam, mu = _omega_parameters(ctx, sampler)
    T = sampler.alpha_point(ctx.rs)
    form = omega_form(ctx, T, P, Q)
    if not form:
        ok = Q not in ctx.W.associated_standard(P)
        tally.record(ok, P=P, Q=Q, note="not associated")
        return
    first = omega_direction(ctx, form, P, Q, sampler)
    second = omega_direction(ctx, form, P, Q, sampler)
    base = tuple(lam) + tuple(mu)
    if on_wall(form, base):
        tally.notes["walls"] = tally.notes.get("walls", 0) + 1
    value = form.laurent_limit(base, first)
    ok = value == form.laurent_limit(base, second)
    ok = ok and value == omega_regrouped(ctx, T, P, Q, lam, mu, first)
    numeric_ok, numeric, exact = numeric_limit_check(form, base, first, value)
    tally.record(ok and numeric_ok, P=P, Q=Q, T=T, lam=lam, mu=mu, value=value.as_dict(),
                 numeric=numeric, exact=exact)


GM_CHECKS = {
    IdentityId.EPSILON_SIGN: check_epsilon_sign,
    IdentityId.GAMMA_POLY: check_gamma_poly,
    IdentityId.CONE_LAPLACE: check_cone_laplace,
    IdentityId.GAMMA_M_POLY: check_gamma_M_poly,
    IdentityId.GM_DECOMPOSITION: check_gm_decomposition,
    IdentityId.PRODUCT_FORMULA: check_product_formula,
    IdentityId.RADICIAL: check_radicial,
    IdentityId.RADICIAL_DIFFERENTIAL: check_radicial_differential,
    IdentityId.OMEGA: check_omega,
    IdentityId.TWISTED_PRODUCT_FORMULA: check_product_formula,
}


# transferência torcida: roda todas as amostras pedidas
UNCAPPED = frozenset({IdentityId.TWISTED_PRODUCT_FORMULA})


def verify_gm_identities(ctx: ConeContext, identity_id: IdentityId | str, n_samples: int,
                         seed: int | RationalSampler) -> SampleTally:
    """
    Run one Laplace-side identity, capped at GM_SAMPLE_CAP samples except the
    twisted product formula. ω keeps drawing until min(n_samples,
    OMEGA_MIN_WALLS) base points on walls have been checked.
    """
    identity_id = IdentityId(identity_id)
    check = GM_CHECKS[identity_id]
    sampler = seed if isinstance(seed, RationalSampler) else RationalSampler(seed)
    runs = n_samples if identity_id in UNCAPPED else min(n_samples, GM_SAMPLE_CAP)

    def guarded(smp: RationalSampler, t: SampleTally) -> None:
        # um polo sobrevivente no limite é falha da identidade, não da amostra
        try:
            check(ctx, smp, t)
        except PoleError as exc:
            t.record(False, error=str(exc))

    tally = run_samples(guarded, runs, sampler)
    if identity_id == IdentityId.OMEGA:
        target = min(n_samples, OMEGA_MIN_WALLS)
        for _ in range(max(runs, target) * 4):
            if tally.notes.get("walls", 0) >= target:
                break
            run_samples(guarded, 1, sampler, tally)
        tally.notes.setdefault("walls", 0)
    if runs < n_samples:
        tally.notes["samples_capped"] = runs
    if not tally.passed:
        logger.warning("%s failed %d/%d on %s: %s", identity_id.value, tally.failed, tally.checked,
                       ctx.label, tally.witnesses[:1])
    return tally
