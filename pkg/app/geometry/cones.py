"""
Characteristic functions of cones and convex sets: τ, τ̂, φ, Γ and δ, the
κ-functions of the hull construction, the regions C(P, Q, R, X) and the
sampled verification of the identities relating them.

Every function takes a ConeContext first; with a twisted context the same
code evaluates τ̃, Γ̃ and friends on the θ₀-fixed subspaces.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from ..core.errors import BoundarySampleError, SpecParseError
from ..core.lp import enumerate_vertices, open_polyhedron_point, polyhedron_is_bounded
from ..core.rational import Vector, add, combine, dot, neg, norm2, scale, sub, zero
from ..core.sampling import RationalSampler, SampleTally, run_samples
from ..models.enums import CharFnKind, IdentityId
from .context import ConeContext
from .families import OrthogonalFamily, constant_family, family_from_T, random_family
from .polytope import hull_coordinates, in_hull
from .weyl import SemiStdParabolic

logger = logging.getLogger(__name__)

Parabolic = SemiStdParabolic


# -- τ, τ̂, φ -------------------------------------------------------------------

def tau(ctx: ConeContext, P: Parabolic, Q: Parabolic, H: Vector) -> int:
    """τ_P^Q(H) = 1 iff α(H) > 0 for every α ∈ Δ_P^Q"""
    return int(all(dot(a, H) > 0 for a in ctx.basis(P, Q).delta))


def tau_hat(ctx: ConeContext, P: Parabolic, Q: Parabolic, H: Vector) -> int:
    """τ̂_P^Q(H) = 1 iff ϖ(H) > 0 for every ϖ ∈ Δ̂_P^Q"""
    return int(all(dot(w, H) > 0 for w in ctx.basis(P, Q).delta_hat))


def phi3(ctx: ConeContext, P: Parabolic, Q: Parabolic, R: Parabolic, H: Vector) -> int:
    """φ_P^{Q,R}: ϖ(H) ≤ 0 on Δ̂_P^R − Δ̂_Q^R and ϖ(H) > 0 on Δ̂_Q^R"""
    middle = ctx.require(P, Q)
    ctx.require(Q, R)
    base = ctx.basis(P, R)
    for orbit, w in zip(base.indices, base.delta_hat):
        value = dot(w, H)
        if orbit <= middle:
            if value > 0:
                return 0
        elif value <= 0:
            return 0
    return 1


def phi3_alternating(ctx: ConeContext, P: Parabolic, Q: Parabolic, R: Parabolic, H: Vector) -> int:
    """φ_P^{Q,R} = Σ_{P⊆S⊆Q} (−1)^{a_S−a_Q} τ̂_S^R"""
    ctx.require(Q, R)
    return sum(ctx.sign(S, Q) * tau_hat(ctx, S, R, H) for S in ctx.between(P, Q))


def phi2(ctx: ConeContext, P: Parabolic, Q: Parabolic, H: Vector) -> int:
    """φ_P^Q = φ_P^{Q,Q}"""
    return phi3(ctx, P, Q, Q, H)


# -- Γ and δ --------------------------------------------------------------------

def gamma_PR(ctx: ConeContext, P: Parabolic, R: Parabolic, H: Vector, X: Vector) -> int:
    """Γ_P^R(H, X) = Σ_{P⊆Q⊆R} (−1)^{a_Q−a_R} τ_P^Q(H) τ̂_Q^R(H − X)"""
    shifted = sub(H, X)
    total = 0
    for Q in ctx.between(P, R):
        if tau(ctx, P, Q, H):
            total += ctx.sign(Q, R) * tau_hat(ctx, Q, R, shifted)
    return total


def gamma_M(ctx: ConeContext, M: frozenset, fam: OrthogonalFamily, H: Vector,
            Q: Parabolic | None = None) -> int:
    """Γ_M^Q(H, 𝒳) = Σ_{P∈ℱ^Q(M)} (−1)^{a_P−a_Q} τ̂_P^Q(H − X_P), Q = G by default"""
    top = Q if Q is not None else ctx.G
    return sum(ctx.sign(P, top) * tau_hat(ctx, P, top, sub(H, fam.at(ctx, P)))
               for P in ctx.facets_below(M, top))


def gamma_M_by_chamber(ctx: ConeContext, M: frozenset, fam: OrthogonalFamily, H: Vector) -> int:
    """Σ_s Σ_{Q∈ℱ_s(M)} (−1)^{a_Q−a_G} τ̂_Q(H − X_s)"""
    G = ctx.G
    total = 0
    for s, facets in ctx.facet_intervals(M):
        if not facets:
            continue
        shifted = sub(H, fam.at(ctx, facets[0]))
        total += sum(ctx.sign(Q, G) * tau_hat(ctx, Q, G, shifted) for Q in facets)
    return total


def gamma_M_phi(ctx: ConeContext, M: frozenset, fam: OrthogonalFamily, H: Vector) -> int:
    """Σ_s (−1)^{a(s)} φ_{M,s}(H − X_s) with φ_{M,s} = φ_{Q_s}^{Q^s,G}"""
    G = ctx.G
    return sum(ctx.sign(upper, G) * phi3(ctx, lower, upper, G, sub(H, fam.at(ctx, lower)))
               for _, lower, upper in ctx.chamber_bounds(M))


def delta_fn(ctx: ConeContext, M: frozenset, Q: Parabolic, H: Vector) -> int:
    """δ_M^Q(H) = 1 iff the projection of H on 𝔞_M^Q vanishes"""
    return int(all(x == 0 for x in ctx.project_rel(ctx.std(M), Q, H)))


# -- κ-functions ----------------------------------------------------------------

def kappa_signs(ctx: ConeContext, lower: Parabolic, kappa: Vector) -> list[int]:
    signs = []
    for a in ctx.basis(lower, ctx.G).delta:
        value = dot(a, kappa)
        if value == 0:
            raise BoundarySampleError("κ lies on a wall of 𝔞_M")
        signs.append(1 if value > 0 else -1)
    return signs


def phi_kappa(ctx: ConeContext, lower: Parabolic, kappa: Vector, H: Vector) -> int:
    """
    φ_{M,s}^κ(H) for the chamber Q_s = lower of s ∈ W(𝔞_M).

    :raises BoundarySampleError: when some α ∈ Δ(M, s) vanishes at κ
    """
    base = ctx.basis(lower, ctx.G)
    for sign, w in zip(kappa_signs(ctx, lower, kappa), base.delta_hat):
        value = dot(w, H)
        if sign > 0 and value > 0:
            return 0
        if sign < 0 and value <= 0:
            return 0
    return 1


def a_kappa(ctx: ConeContext, lower: Parabolic, kappa: Vector) -> int:
    """a(s, κ) = #{α ∈ Δ(M, s) : α(κ) < 0}"""
    return sum(1 for sign in kappa_signs(ctx, lower, kappa) if sign < 0)


def gamma_M_kappa(ctx: ConeContext, M: frozenset, fam: OrthogonalFamily, H: Vector, kappa: Vector) -> int:
    """Γ_M(H, 𝒳, κ) = Σ_s (−1)^{a(s,κ)} φ_{M,s}^κ(H − X_s)"""
    total = 0
    for _, lower in ctx.chambers(M):
        sign = -1 if a_kappa(ctx, lower, kappa) % 2 else 1
        total += sign * phi_kappa(ctx, lower, kappa, sub(H, fam.at(ctx, lower)))
    return total


def chamber_point(ctx: ConeContext, lower: Parabolic, weights) -> Vector:
    """A point of C_M(s): positive weights on the coweights dual to Δ(M, s)"""
    base = ctx.basis(lower, ctx.G)
    return combine(list(weights), base.coweights, ctx.rs.dim)


# -- dispatch -------------------------------------------------------------------

@dataclass
class CharFnParams:
    """
    Arguments of one characteristic function.

    ``parabolics`` holds the chain (P, Q[, R]) for τ, τ̂, φ and Γ_P^R, the upper
    parabolic Q for Γ_M^Q and δ_M^Q. ``offset`` is X for Γ_P^R.
    """
    kind: CharFnKind
    parabolics: tuple[Parabolic, ...] = ()
    levi: frozenset | None = None
    offset: Vector | None = None
    family: OrthogonalFamily | None = None
    kappa: Vector | None = None


_ARITY = {
    CharFnKind.TAU: 2,
    CharFnKind.TAU_HAT: 2,
    CharFnKind.PHI2: 2,
    CharFnKind.PHI3: 3,
    CharFnKind.GAMMA_PR: 2,
    CharFnKind.DELTA: 1,
}


def eval_cone_fn(ctx: ConeContext, params: CharFnParams, H: Vector) -> int:
    """
    Evaluate the characteristic function described by params at H

    :raises SpecParseError: when arguments required by the kind are missing
    :raises ParabolicInclusionError: when the parabolic chain is not nested
    """
    kind = CharFnKind(params.kind)
    chain = params.parabolics
    arity = _ARITY.get(kind)
    if arity is not None and len(chain) != arity:
        raise SpecParseError(f"{kind.value} expects {arity} parabolics, got {len(chain)}")
    if kind == CharFnKind.TAU:
        ctx.require(*chain)
        return tau(ctx, *chain, H)
    if kind == CharFnKind.TAU_HAT:
        ctx.require(*chain)
        return tau_hat(ctx, *chain, H)
    if kind == CharFnKind.PHI2:
        return phi2(ctx, *chain, H)
    if kind == CharFnKind.PHI3:
        return phi3(ctx, *chain, H)
    if kind == CharFnKind.GAMMA_PR:
        if params.offset is None:
            raise SpecParseError("gamma_PR needs an offset X")
        ctx.require(*chain)
        return gamma_PR(ctx, *chain, H, params.offset)
    if params.levi is None:
        raise SpecParseError(f"{kind.value} needs a Levi subset")
    if kind == CharFnKind.DELTA:
        return delta_fn(ctx, params.levi, chain[0], H)
    if params.family is None:
        raise SpecParseError(f"{kind.value} needs an orthogonal family")
    if kind == CharFnKind.GAMMA_M:
        return gamma_M(ctx, params.levi, params.family, H, chain[0] if chain else None)
    if params.kappa is None:
        raise SpecParseError("gamma_M_kappa needs κ")
    return gamma_M_kappa(ctx, params.levi, params.family, H, params.kappa)


# -- hull oracle ----------------------------------------------------------------

def hull_points(ctx: ConeContext, M: frozenset, fam: OrthogonalFamily) -> list[Vector]:
    """X_P for P ∈ 𝒫(M) in coroot coordinates of 𝔞_M^G"""
    base = ctx.basis(ctx.std(M), ctx.G)
    return list(dict.fromkeys(hull_coordinates(base, fam.at(ctx, P)) for _, P in ctx.chambers(M)))


def hull_membership(ctx: ConeContext, M: frozenset, fam: OrthogonalFamily, H: Vector,
                    *, reject_boundary: bool = False) -> int:
    """
    1 iff the projection of H on 𝔞_M^G lies in conv{X_P : P ∈ 𝒫(M)}

    :raises BoundarySampleError: with reject_boundary, for H on the hull boundary
    """
    base = ctx.basis(ctx.std(M), ctx.G)
    return in_hull(hull_points(ctx, M, fam), hull_coordinates(base, H), reject_boundary=reject_boundary)


# -- the regions C(P, Q, R, X) ----------------------------------------------------------

@dataclass(frozen=True)
class RegionReport:
    """Exact facts about C(P, Q, R, X) projected on 𝔞_P^R"""
    empty: bool
    bounded: bool
    multipliers: tuple[Fraction, ...] | None
    vertices: tuple[Vector, ...]
    max_ratio: Fraction | None


def region_constraints(ctx: ConeContext, P: Parabolic, Q: Parabolic, R: Parabolic, X: Vector):
    """
    Strict and weak constraints (a, b) meaning a·y > b, a·y ≥ b on the
    coordinates y of H = Σ y_j α_j^∨ over the coroot basis of 𝔞_P^R.
    """
    middle = ctx.require(P, Q)
    ctx.require(Q, R)
    base = ctx.basis(P, R)
    k = base.dimension
    strict, weak = [], []
    for orbit, a in zip(base.indices, base.delta):
        row = tuple(dot(a, c) for c in base.coroots)
        if orbit <= middle:
            strict.append((row, Fraction(0)))
        else:
            weak.append((neg(row), Fraction(0)))
    for j, (orbit, w) in enumerate(zip(base.indices, base.delta_hat)):
        unit = tuple(Fraction(int(i == j)) for i in range(k))
        bound = dot(w, X)
        if orbit <= middle:
            weak.append((neg(unit), -bound))
        else:
            strict.append((unit, bound))
    return base, strict, weak


def region_C(ctx: ConeContext, P: Parabolic, Q: Parabolic, R: Parabolic, X: Vector) -> RegionReport:
    """
    Decide emptiness of C(P, Q, R, X), certify that its closure is bounded
    (recession cone {0}) and enumerate the vertices of the closure.

    The ratio reported is max ‖H‖²/‖X_P^R‖² over those vertices.
    """
    base, strict, weak = region_constraints(ctx, P, Q, R, X)
    k = base.dimension
    if k == 0:
        return RegionReport(empty=False, bounded=True, multipliers=(), vertices=((),), max_ratio=None)
    empty = open_polyhedron_point(k, strict=strict, weak=weak) is None
    A = [neg(a) for a, _ in strict + weak]
    b = [-bound for _, bound in strict + weak]
    recession = polyhedron_is_bounded(A, k)
    vertices = tuple(enumerate_vertices(A, b, k))
    ratio = None
    scale_x = norm2(ctx.project_rel(P, R, X))
    if not empty and scale_x and vertices:
        ratio = max(norm2(combine(v, base.coroots, ctx.rs.dim)) for v in vertices) / scale_x
    return RegionReport(empty, recession.trivial, recession.multipliers, vertices, ratio)


# -- sampled verification ---------------------------------------------------------

def random_chain(ctx: ConeContext, sampler: RationalSampler, length: int,
                  standard: bool = False) -> list[Parabolic]:
    """Nested P ⊆ ... ⊆ R sharing one Weyl frame"""
    subsets = [sampler.choice(ctx.standard_subsets())]
    for _ in range(length - 1):
        subsets.append(sampler.choice(ctx.std_interval(frozenset(), subsets[-1])))
    u = 0 if standard else sampler.choice(ctx.elements())
    return [ctx.W.semistandard(S, u) for S in reversed(subsets)]


def random_levi(ctx: ConeContext, sampler: RationalSampler) -> frozenset:
    return sampler.choice(ctx.standard_subsets())


def _random_kappa(ctx: ConeContext, M: frozenset, sampler: RationalSampler) -> Vector:
    return ctx.project(ctx.std(M), sampler.alpha_point(ctx.rs))


def _point_near_hull(ctx: ConeContext, M: frozenset, fam: OrthogonalFamily, sampler: RationalSampler) -> Vector:
    """Either a random point or a random convex combination of the X_P with noise"""
    noise = sampler.alpha_point(ctx.rs)
    if sampler.rng.random() < 0.5:
        return noise
    chambers = [P for _, P in ctx.chambers(M)]
    weights = [sampler.unit() for _ in chambers]
    total = sum(weights)
    centre = combine([w / total for w in weights], [fam.at(ctx, P) for P in chambers], ctx.rs.dim)
    return add(centre, scale(Fraction(1, 10), noise))


def check_binomial(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    P, R = random_chain(ctx, sampler, 2)
    total = sum(ctx.sign(P, Q) for Q in ctx.between(P, R))
    tally.record(total == int(P == R), P=P.std, R=R.std, u=P.u, total=total)


def check_tau_le_tau_hat(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    P, Q, R = random_chain(ctx, sampler, 3)
    H = sampler.alpha_point(ctx.rs)
    t_pq, th_pq = tau(ctx, P, Q, H), tau_hat(ctx, P, Q, H)
    th_qr, th_pr = tau_hat(ctx, Q, R, H), tau_hat(ctx, P, R, H)
    ok = t_pq <= th_pq and t_pq * th_qr <= th_pq * th_qr <= th_pr
    tally.record(ok, P=P.std, Q=Q.std, R=R.std, u=P.u, H=H)


def check_langlands(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    P, R = random_chain(ctx, sampler, 2)
    H = sampler.alpha_point(ctx.rs)
    expected = int(P == R)
    middle = ctx.between(P, R)
    left = sum(ctx.sign(P, Q) * tau(ctx, P, Q, H) * tau_hat(ctx, Q, R, H) for Q in middle)
    right = sum(ctx.sign(P, Q) * tau_hat(ctx, P, Q, H) * tau(ctx, Q, R, H) for Q in middle)
    tally.record(left == expected and right == expected, P=P.std, R=R.std, u=P.u, H=H,
                 tau_tau_hat=left, tau_hat_tau=right)


def check_phi_partition(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    P, Q, R = random_chain(ctx, sampler, 3)
    H = sampler.alpha_point(ctx.rs)
    total = sum(phi2(ctx, P, S, H) * tau(ctx, S, R, H) for S in ctx.between(P, R))
    literal = phi3(ctx, P, Q, R, H)
    alternating = phi3_alternating(ctx, P, Q, R, H)
    tally.record(total == 1 and literal == alternating, P=P.std, Q=Q.std, R=R.std, u=P.u, H=H,
                 partition=total, phi=literal, phi_alternating=alternating)


def check_region_bound(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    P, Q, R = random_chain(ctx, sampler, 3, standard=True)
    rs = ctx.rs
    X = sampler.alpha_point(rs)
    general = region_C(ctx, P, Q, R, X)
    ok = general.bounded
    # X no fecho da câmara positiva
    closed = ctx.fixed(rs.from_alpha_values([max(x, Fraction(0)) for x in sampler.rats(rs.rank)]))
    if Q != R:
        ok = ok and region_C(ctx, P, Q, R, closed).empty
    if P != R:
        ok = ok and region_C(ctx, P, Q, R, zero(rs.dim)).empty
    if general.max_ratio is not None:
        key = "max_ratio"
        tally.notes[key] = max(tally.notes.get(key, Fraction(0)), general.max_ratio)
    tally.record(ok, P=P.std, Q=Q.std, R=R.std, X=X, closed_chamber_X=closed)


def check_gamma_partition(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    P, R = random_chain(ctx, sampler, 2)
    rs = ctx.rs
    H, X = sampler.alpha_point(rs), sampler.alpha_point(rs)
    shifted = sub(H, X)
    terms = [gamma_PR(ctx, P, Q, H, X) * tau(ctx, Q, R, shifted) for Q in ctx.between(P, R)]
    ok = sum(terms) == tau(ctx, P, R, H)
    ok = ok and gamma_PR(ctx, P, R, H, zero(rs.dim)) == int(P == R)
    if P.is_standard:
        regular = ctx.fixed(sampler.regular_point(rs))
        terms_reg = [gamma_PR(ctx, P, Q, H, regular) * tau(ctx, Q, R, sub(H, regular))
                     for Q in ctx.between(P, R)]
        ok = ok and all(t in (0, 1) for t in terms_reg) and sum(terms_reg) == tau(ctx, P, R, H)
    tally.record(ok, P=P.std, R=R.std, u=P.u, H=H, X=X)


def check_gamma_dual(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    P, R = random_chain(ctx, sampler, 2)
    H, X = sampler.alpha_point(ctx.rs), sampler.alpha_point(ctx.rs)
    right = sum(ctx.sign(Q, R) * tau_hat(ctx, P, Q, H) * gamma_PR(ctx, Q, R, H, X) for Q in ctx.between(P, R))
    tally.record(right == tau_hat(ctx, P, R, sub(H, X)), P=P.std, R=R.std, u=P.u, H=H, X=X)


def check_gamma_convolution(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    P, R = random_chain(ctx, sampler, 2)
    rs = ctx.rs
    H, X, Y = sampler.alpha_point(rs), sampler.alpha_point(rs), sampler.alpha_point(rs)
    right = sum(gamma_PR(ctx, P, Q, H, X) * gamma_PR(ctx, Q, R, sub(H, X), Y) for Q in ctx.between(P, R))
    tally.record(right == gamma_PR(ctx, P, R, H, add(X, Y)), P=P.std, R=R.std, u=P.u, H=H, X=X, Y=Y)


def check_gamma_closed_form(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    P, R = random_chain(ctx, sampler, 2, standard=True)
    rs = ctx.rs
    X = ctx.fixed(sampler.regular_point(rs))
    H = add(scale(sampler.unit(), X), scale(Fraction(1, 5), sampler.alpha_point(rs)))
    closed_form = tau(ctx, P, R, H) * phi2(ctx, P, R, sub(H, X))
    region = region_C(ctx, P, R, R, X)
    if region.max_ratio is not None:
        tally.notes["max_ratio"] = max(tally.notes.get("max_ratio", Fraction(0)), region.max_ratio)
    tally.record(gamma_PR(ctx, P, R, H, X) == closed_form and region.bounded,
                 P=P.std, R=R.std, H=H, X=X)


def _levi_and_facet(ctx: ConeContext, sampler: RationalSampler) -> tuple[frozenset, Parabolic]:
    M = random_levi(ctx, sampler)
    return M, sampler.choice(ctx.facets(M))


def _maybe_on_facet(ctx: ConeContext, M: frozenset, H: Vector, sampler: RationalSampler) -> Vector:
    """With probability 1/3 move H onto 𝔞₀^M ⊕ 𝔞_Q for a random facet Q so δ_M^Q fires"""
    if sampler.rng.random() < 1 / 3:
        Q = sampler.choice(ctx.facets(M))
        return sub(H, ctx.project_rel(ctx.std(M), Q, H))
    return H


def check_facet_partition(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    M, R = _levi_and_facet(ctx, sampler)
    H = _maybe_on_facet(ctx, M, sampler.alpha_point(ctx.rs), sampler)
    total = sum(delta_fn(ctx, M, Q, H) * tau(ctx, Q, R, H) for Q in ctx.facets_below(M, R))
    null_family = constant_family(ctx.W, zero(ctx.rs.dim))
    zero_offset = gamma_M(ctx, M, null_family, H, R) == delta_fn(ctx, M, R, H)
    tally.record(total == 1 and zero_offset, M=M, R=R.std, u=R.u, H=H, partition=total)


def check_gamma_M_delta(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    M, R = _levi_and_facet(ctx, sampler)
    fam = random_family(ctx, sampler, regular=False)
    H = _maybe_on_facet(ctx, M, sampler.alpha_point(ctx.rs), sampler)
    right = sum(delta_fn(ctx, M, Q, H) * gamma_PR(ctx, Q, R, H, fam.at(ctx, Q)) for Q in ctx.facets_below(M, R))
    tally.record(gamma_M(ctx, M, fam, H, R) == right, M=M, R=R.std, u=R.u, H=H)


def check_gamma_M_partition(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    M, R = _levi_and_facet(ctx, sampler)
    fam = random_family(ctx, sampler, regular=False)
    H = sampler.alpha_point(ctx.rs)
    total = sum(gamma_M(ctx, M, fam, H, Q) * tau(ctx, Q, R, sub(H, fam.at(ctx, Q)))
                for Q in ctx.facets_below(M, R))
    tally.record(total == 1, M=M, R=R.std, u=R.u, H=H, total=total)


def check_gamma_M_convolution(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    M, R = _levi_and_facet(ctx, sampler)
    X_fam = random_family(ctx, sampler, regular=False)
    Y_fam = random_family(ctx, sampler, regular=False)
    H = sampler.alpha_point(ctx.rs)
    right = sum(
        gamma_M(ctx, M, X_fam, H, Q) * gamma_PR(ctx, Q, R, sub(H, X_fam.at(ctx, Q)), Y_fam.at(ctx, Q))
        for Q in ctx.facets_below(M, R)
    )
    tally.record(gamma_M(ctx, M, X_fam.plus(Y_fam), H, R) == right, M=M, R=R.std, u=R.u, H=H)


def check_kappa_independence(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    M = random_levi(ctx, sampler)
    fam = random_family(ctx, sampler, regular=True)
    H = _point_near_hull(ctx, M, fam, sampler)
    k1, k2 = _random_kappa(ctx, M, sampler), _random_kappa(ctx, M, sampler)
    g1, g2 = gamma_M_kappa(ctx, M, fam, H, k1), gamma_M_kappa(ctx, M, fam, H, k2)
    ok = g1 == g2 == gamma_M(ctx, M, fam, H)

    # κ na câmara positiva: φ^κ_{M,s} = φ_{Q_s}^{Q^s,G} e a(s,κ) = a_{Q^s} − a_G
    G = ctx.G
    positive = ctx.positive_chamber_point(M, [sampler.positive() for _ in range(ctx.a_std(M))])
    for s, lower, upper in ctx.chamber_bounds(M):
        if a_kappa(ctx, lower, positive) != ctx.a(upper) - ctx.a(G):
            ok = False
        shifted = sub(H, fam.at(ctx, lower))
        if phi_kappa(ctx, lower, positive, shifted) != phi3(ctx, lower, upper, G, shifted):
            ok = False

    # X_s no suporte para κ ∈ C_M(s); ⟨κ, H − X_s⟩ ≤ 0 no suporte
    s, lower = sampler.choice(ctx.chambers(M))
    base = ctx.basis(lower, G)
    kappa = chamber_point(ctx, lower, [sampler.positive() for _ in range(base.dimension)])
    X_s = fam.at(ctx, lower)
    ok = ok and gamma_M_kappa(ctx, M, fam, X_s, kappa) == 1
    if gamma_M_kappa(ctx, M, fam, H, kappa) == 1:
        ok = ok and dot(kappa, sub(H, X_s)) <= 0
    tally.record(ok, M=M, H=H, kappa_1=k1, kappa_2=k2, s=ctx.W.word(s))


def check_gamma_M_phi(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    M = random_levi(ctx, sampler)
    fam = random_family(ctx, sampler, regular=False)
    H = sampler.alpha_point(ctx.rs)
    value = gamma_M(ctx, M, fam, H)
    ok = value == gamma_M_by_chamber(ctx, M, fam, H) == gamma_M_phi(ctx, M, fam, H)
    tally.record(ok, M=M, H=H, gamma=value)


def check_hull(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    M = random_levi(ctx, sampler)
    fam = random_family(ctx, sampler, regular=True)
    H = _point_near_hull(ctx, M, fam, sampler)
    kappa = _random_kappa(ctx, M, sampler)
    value = gamma_M(ctx, M, fam, H)
    inside = hull_membership(ctx, M, fam, H, reject_boundary=True)
    with_kappa = gamma_M_kappa(ctx, M, fam, H, kappa)
    tally.record(value == inside == with_kappa, M=M, H=H, kappa=kappa, gamma=value, hull=inside)


def check_levi_monotone(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    rs = ctx.rs
    L = random_levi(ctx, sampler)
    M = sampler.choice(ctx.std_interval(frozenset(), L))
    fam = family_from_T(ctx.W, ctx.fixed(sampler.regular_point(rs)))
    H = _point_near_hull(ctx, M, fam, sampler)
    diff = gamma_M(ctx, L, fam, H) - gamma_M(ctx, M, fam, H)
    ok = diff in (0, 1)
    if diff == 1:
        ok = ok and hull_membership(ctx, M, fam, H, reject_boundary=True) == 0
    tally.record(ok, L=L, M=M, H=H, difference=diff)


CONE_CHECKS = {
    IdentityId.BINOMIAL: check_binomial,
    IdentityId.TAU_LE_TAU_HAT: check_tau_le_tau_hat,
    IdentityId.LANGLANDS: check_langlands,
    IdentityId.PHI_PARTITION: check_phi_partition,
    IdentityId.BOUND_C: check_region_bound,
    IdentityId.GAMMA_PARTITION: check_gamma_partition,
    IdentityId.GAMMA_DUAL: check_gamma_dual,
    IdentityId.GAMMA_CONVOLUTION: check_gamma_convolution,
    IdentityId.BOUND_GAMMA: check_gamma_closed_form,
    IdentityId.FACET_PARTITION: check_facet_partition,
    IdentityId.GAMMA_M_DELTA: check_gamma_M_delta,
    IdentityId.GAMMA_M_PARTITION: check_gamma_M_partition,
    IdentityId.GAMMA_M_CONVOLUTION: check_gamma_M_convolution,
    IdentityId.KAPPA_INDEPENDENCE: check_kappa_independence,
    IdentityId.GAMMA_M_PHI: check_gamma_M_phi,
    IdentityId.GAMMA_M_KAPPA: check_hull,
    IdentityId.LEVI_MONOTONE: check_levi_monotone,
}


def verify_cone_identities(ctx: ConeContext, identity_id: IdentityId | str, n_samples: int,
                           seed: int | RationalSampler) -> SampleTally:
    """Run one catalogue identity of the cone algebra on n_samples random inputs"""
    identity_id = IdentityId(identity_id)
    check = CONE_CHECKS[identity_id]
    sampler = seed if isinstance(seed, RationalSampler) else RationalSampler(seed)
    tally = run_samples(lambda smp, t: check(ctx, smp, t), n_samples, sampler)
    if not tally.passed:
        logger.warning("%s failed %d/%d on %s: %s", identity_id.value, tally.failed, tally.checked,
                       ctx.label, tally.witnesses[:1])
    return tally
