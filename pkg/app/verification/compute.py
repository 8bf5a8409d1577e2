"""
Compute commands shared by the CLI and the HTTP routers: hull volume,
radicial expansion, scalar ω, hull membership and certificate listings
"""
import logging

from ..core.config import MEASURE_CONVENTION
from ..core.errors import SpecParseError
from ..core.rational import format_rat, is_zero, parse_rat, sub
from ..core.sampling import RationalSampler
from ..geometry.cones import hull_membership, hull_points
from ..geometry.context import ConeContext
from ..geometry.families import OrthogonalFamily, family_from_mapping, parse_levi, validate_orthogonal_family
from ..geometry.gm_families import (
    ORACLE_MAX_RANK,
    omega_direction,
    omega_form,
    omega_regrouped,
    radicial_differential,
    radicial_expansion,
    radicial_family,
    radicial_orthogonal_family,
)
from ..geometry.laplace import ExpValue, gamma_M_poly, numeric_limit_check, poly_terms
from ..geometry.polytope import polytope_volume
from ..geometry.twisted import TwistedContext
from ..models.enums import CertificateCase
from ..schemas.certificates import CertificateOut, CertificateRequest
from ..schemas.compute import (
    DifferentialOut,
    ExpValueOut,
    HullRequest,
    HullResponse,
    OmegaRequest,
    OmegaResponse,
    OrthogonalFamilyFile,
    PolynomialOut,
    PolynomialTerm,
    RadicialRequest,
    RadicialResponse,
    VolumeRequest,
    VolumeResponse,
)
from .certificates import cone_kernel_certificates
from .suite import load_context

logger = logging.getLogger(__name__)


def _vector(ctx: ConeContext, raw, name: str):
    if len(raw) != ctx.rs.dim:
        raise SpecParseError(f"{name} needs {ctx.rs.dim} coordinates, got {len(raw)}")
    return tuple(parse_rat(x) for x in raw)


def _family(ctx: ConeContext, data: OrthogonalFamilyFile) -> OrthogonalFamily:
    return family_from_mapping(ctx.W, data.as_mapping())


def _exp_value(value: ExpValue) -> ExpValueOut:
    rational = value.rational
    return ExpValueOut(terms=value.as_dict(), rational=None if rational is None else format_rat(rational))


def compute_volume(req: VolumeRequest) -> VolumeResponse:
    """γ_M(𝒳) for the given family, with the triangulated hull volume when it applies"""
    ctx = load_context(req.system, req.twist)
    M = parse_levi(req.levi, ctx.rs.rank)
    fam = _family(ctx, req.family)
    regular = validate_orthogonal_family(fam).regular
    result = gamma_M_poly(ctx, M, fam, RationalSampler(req.seed))
    hull = None
    if regular and ctx.rs.rank <= ORACLE_MAX_RANK:
        hull = format_rat(polytope_volume(hull_points(ctx, M, fam)))
    return VolumeResponse(
        system=ctx.label,
        levi=sorted(i + 1 for i in M),
        measure_convention=MEASURE_CONVENTION,
        regular=regular,
        value=format_rat(result.value),
        independent=result.independent,
        hull_volume=hull,
    )


def compute_radicial(req: RadicialRequest) -> RadicialResponse:
    """Both expansions of γ_L∘j, optionally evaluated at z and tested against g"""
    ctx = load_context(req.system, req.twist)
    L = parse_levi(req.levi, ctx.rs.rank)
    expansion = radicial_expansion(ctx, L, RationalSampler(req.seed), projected=req.projected)
    value = None
    if req.z is not None:
        family = radicial_family(ctx, expansion.levi, req.z)
        radicial_orthogonal_family(ctx, family)
        value = format_rat(expansion.value(family.z))
    differential = None
    if req.g:
        report = radicial_differential(expansion, req.g)
        differential = DifferentialOut(limit=str(report.limit), derivative=str(report.derivative),
                                       agree=report.agree)
    return RadicialResponse(
        system=ctx.label,
        levi=sorted(i + 1 for i in L),
        carrier=sorted(i + 1 for i in expansion.levi),
        measure_convention=MEASURE_CONVENTION,
        degree=expansion.degree,
        roots=[[format_rat(x) for x in b] for b in expansion.roots],
        polynomial=PolynomialOut(
            symbols=[str(s) for s in expansion.symbols],
            terms=[PolynomialTerm(**t) for t in poly_terms(expansion.limit_poly)],
        ),
        agree=expansion.agree,
        multilinear=expansion.multilinear,
        bases=len(expansion.basis_coefficients),
        value=value,
        differential=differential,
    )


def compute_omega(req: OmegaRequest) -> OmegaResponse:
    """ω_{Q|P}^T(λ, μ) with scalar intertwining factors"""
    ctx = load_context(req.system, req.twist)
    if ctx.twisted:
        raise SpecParseError("omega is computed on untwisted frames only")
    rank = ctx.rs.rank
    P, Q = parse_levi(req.P, rank), parse_levi(req.Q, rank)
    T = _vector(ctx, req.T, "T")
    lam, mu = _vector(ctx, req.lam, "lam"), _vector(ctx, req.mu, "mu")
    if not is_zero(sub(lam, ctx.project(ctx.std(P), lam))):
        raise SpecParseError("lam must lie in a_P")
    if not is_zero(sub(mu, ctx.project(ctx.std(Q), mu))):
        raise SpecParseError("mu must lie in a_Q")
    form = omega_form(ctx, T, P, Q)
    if not form:
        return OmegaResponse(system=ctx.label, associated=False, value=_exp_value(ExpValue()),
                             regrouped_agree=True, numeric_ok=True)
    direction = omega_direction(ctx, form, P, Q, RationalSampler(req.seed))
    base = tuple(lam) + tuple(mu)
    value = form.laurent_limit(base, direction)
    regrouped = omega_regrouped(ctx, T, P, Q, lam, mu, direction)
    numeric_ok, numeric, exact = numeric_limit_check(form, base, direction, value)
    return OmegaResponse(system=ctx.label, associated=True, value=_exp_value(value),
                         regrouped_agree=regrouped == value, numeric_ok=numeric_ok,
                         numeric=numeric, exact=exact)


def compute_hull(req: HullRequest) -> HullResponse:
    """1 iff H projects into conv{X_P : P ∈ 𝒫(M)}"""
    ctx = load_context(req.system, req.twist)
    M = parse_levi(req.levi, ctx.rs.rank)
    fam = _family(ctx, req.family)
    H = _vector(ctx, req.H, "H")
    member = hull_membership(ctx, M, fam, H)
    points = [[format_rat(x) for x in p] for p in hull_points(ctx, M, fam)]
    return HullResponse(system=ctx.label, levi=sorted(i + 1 for i in M), member=member, points=points)


def list_certificates(req: CertificateRequest) -> list[CertificateOut]:
    ctx = load_context(req.system, req.twist)
    if not isinstance(ctx, TwistedContext):
        raise SpecParseError("certificates need a twisted frame, e.g. 'A3:flip'")
    try:
        case = CertificateCase(req.case)
    except ValueError:
        raise SpecParseError(f"unknown certificate case {req.case!r}")
    results = cone_kernel_certificates(ctx, case, req.n_samples, req.seed)
    logger.info("certificates %s on %s: %d instances", case.value, ctx.label, len(results))
    return [CertificateOut(**r.as_dict()) for r in results]
