"""
Exact certificates for the "there is a constant c > 0" inequalities of the
twisted cone geometry.

Each inequality is homogeneous, so it holds iff the closure of the cone on
which it is claimed meets a kernel subspace only in 0. That triviality is
decided by exact linear programming and the resulting multipliers are
replayed. Observed ratios are reported alongside as empirical constants.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ..core.config import CERTIFICATE_RATIO_SAMPLES
from ..core.errors import ParabolicInclusionError
from ..core.lp import (
    cone_meets_subspace_trivially,
    feasible_point,
    open_polyhedron_point,
    replay_cone_certificate,
)
from ..core.rational import Vector, combine, dot, is_zero, neg, norm2, nullspace, sub
from ..core.sampling import RationalSampler, SampleTally, jsonable
from ..geometry.parabolic import enumerate_standard_parabolics, interval, project_a, project_rel, relative_bases
from ..geometry.twisted import TwistedContext, plus_minus, q_kernel_part, q_map
from ..models.enums import CertificateCase

logger = logging.getLogger(__name__)

@dataclass
class CertificateResult:
    """
    Outcome for one instance of a case.

    ``verdict`` is "trivial" (kernel-cone triviality proved), "vacuous" (the
    open cone is empty), "branch-1" / "branch-2" for the fixed-point
    dichotomy, or "failed".
    """
    case: CertificateCase
    instance: dict[str, Any]
    holds: bool
    verdict: str
    multipliers: Vector | None = None
    witness: Vector | None = None
    max_ratio: Fraction | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return jsonable({
            "case": self.case.value,
            "instance": self.instance,
            "holds": self.holds,
            "verdict": self.verdict,
            "multipliers": self.multipliers,
            "witness": self.witness,
            "max_ratio": self.max_ratio,
            **self.extra,
        })

# -- building blocks ---------------------------------------------------------------

def _kernel_in(basis: list[Vector], maps, dim: int) -> list[Vector]:
    """Basis of {x ∈ span(basis) : f(x) = 0 for every linear map f in maps}"""
    if not basis:
        return []
    images = [tuple(c for f in maps for c in f(b)) for b in basis]
    rows = [tuple(img[k] for img in images) for k in range(len(images[0]))]
    return [combine(c, basis, dim) for c in nullspace(rows, len(basis))]

def _sigma_rows(ctx: TwistedContext, Q: frozenset, R: frozenset, P: frozenset) -> list[Vector]:
    """Closed σ̃_Q^R as rows r·H ≥ 0: α on Δ_Q^R, −α on Δ_Q − Δ_Q^R, ϖ̃ on Δ̂_P̃"""
    base = relative_bases(ctx.rs, Q, ctx.full)
    rows = [a if orbit <= R else neg(a) for orbit, a in zip(base.indices, base.delta)]
    return rows + list(ctx.std_basis(P, ctx.full).delta_hat)

def _decide(rows: list[Vector], basis: list[Vector], dim: int) -> tuple[bool, Vector | None, Vector | None]:
    result = cone_meets_subspace_trivially(rows, basis, dim)
    if result.trivial:
        return replay_cone_certificate(rows, basis, result.multipliers), result.multipliers, None
    return False, None, result.witness

def _interior_samples(rows: list[Vector], basis: list[Vector], dim: int, sampler: RationalSampler,
                      count: int = CERTIFICATE_RATIO_SAMPLES) -> list[Vector] | None:
    """Points with r·x > 0 for every row inside span(basis); None when that open cone is empty"""
    k = len(basis)
    coords = [tuple(dot(r, b) for b in basis) for r in rows]
    start = open_polyhedron_point(k, strict=[(c, Fraction(0)) for c in coords])
    if start is None:
        return None
    points = [combine(start, basis, dim)]
    for _ in range(count * 4):
        if len(points) > count:
            break
        y = tuple(x + sampler.rat() / 10 for x in start)
        if all(dot(c, y) > 0 for c in coords):
            points.append(combine(y, basis, dim))
    return points

def _max_ratio(pairs) -> Fraction | None:
    ratios = [num / den for num, den in pairs if den]
    return max(ratios) if ratios else None

# -- q-map --------------------------------------------------------------------------------

def certify_q_map(ctx: TwistedContext, Q: frozenset, sampler: RationalSampler,
                  ratio_samples: int = CERTIFICATE_RATIO_SAMPLES) -> CertificateResult:
    """
    ‖X‖ ≪ ‖q(X)‖ on the cone spanned by the ϖ^∨ of Δ̂_Q^{Q⁺} and the −ᾱ^∨ of
    Δ_{Q₀}^Q: certified by a y with ⟨y, q(g)⟩ > 0 on every generator g.
    """
    rs = ctx.rs
    theta = ctx.theta
    Q0, Qp = q_kernel_part(theta, Q), theta.closure(Q)
    generators = list(relative_bases(rs, Q, Qp).coweights)
    generators += [neg(c) for c in relative_bases(rs, Q0, Q).coroots]
    kernel_ok = all(is_zero(q_map(ctx, Q, rs.coroots[i])) for i in Q0)
    instance = {"Q": Q, "Q0": Q0, "Q_plus": Qp}
    if not generators:
        return CertificateResult(CertificateCase.Q_MAP, instance, kernel_ok, "trivial", multipliers=())

    images = [q_map(ctx, Q, g) for g in generators]
    y = open_polyhedron_point(rs.dim, strict=[(img, Fraction(0)) for img in images])
    if y is None:
        lam = feasible_point(len(images),
                             A_eq=[[img[k] for img in images] for k in range(rs.dim)] + [[1] * len(images)],
                             b_eq=[0] * rs.dim + [1], nonneg=True)
        witness = combine(lam, generators, rs.dim) if lam is not None else None
        return CertificateResult(CertificateCase.Q_MAP, instance, False, "failed", witness=witness)

    holds = kernel_ok and all(dot(y, img) > 0 for img in images)
    pairs = []
    for _ in range(ratio_samples):
        X = combine([sampler.positive() for _ in generators], generators, rs.dim)
        pairs.append((norm2(X), norm2(q_map(ctx, Q, X))))
    return CertificateResult(CertificateCase.Q_MAP, instance, holds, "trivial",
                             multipliers=y, max_ratio=_max_ratio(pairs))

# -- balanced and shifted q-map --------------------------------------------------------

def certify_q_map_balanced(ctx: TwistedContext, Q: frozenset, R: frozenset, sampler: RationalSampler,
                           P_prime: frozenset | None = None,
                           ratio_samples: int = CERTIFICATE_RATIO_SAMPLES) -> CertificateResult:
    """
    With Q⁺ = R⁻: the closed cone σ̃_Q^R φ_{Q₀}^Q (or σ̃_Q^R φ_{Q₀}^{P'} τ_{P'}^Q
    when P' is given) in 𝔞_{Q₀}^G meets ker q (and ker of the 𝔞_{P'}^Q part) in 0.
    """
    rs = ctx.rs
    theta = ctx.theta
    pm = plus_minus(theta, Q, R)
    if pm.plus != pm.minus:
        raise ParabolicInclusionError("the balanced q-estimate needs Q⁺ = R⁻")
    Q0 = q_kernel_part(theta, Q)
    rows = _sigma_rows(ctx, Q, R, pm.plus)
    maps = [lambda v: q_map(ctx, Q, v)]
    if P_prime is None:
        case = CertificateCase.Q_MAP_BALANCED
        rows += [neg(w) for w in relative_bases(rs, Q0, Q).delta_hat]
        instance = {"Q": Q, "R": R, "Q0": Q0}
    else:
        if not Q0 <= P_prime <= Q:
            raise ParabolicInclusionError("P' must satisfy Q₀ ⊆ P' ⊆ Q")
        case = CertificateCase.Q_MAP_SHIFTED
        rows += [neg(w) for w in relative_bases(rs, Q0, P_prime).delta_hat]
        rows += list(relative_bases(rs, P_prime, Q).delta)
        maps.append(lambda v: project_rel(rs, P_prime, Q, v))
        instance = {"Q": Q, "R": R, "Q0": Q0, "P_prime": P_prime}

    space = list(relative_bases(rs, Q0, ctx.full).coweights)
    points = _interior_samples(rows, space, rs.dim, sampler, ratio_samples)
    if points is None:
        return CertificateResult(case, instance, True, "vacuous")
    kernel = _kernel_in(space, maps, rs.dim)
    holds, multipliers, witness = _decide(rows, kernel, rs.dim)
    pairs = [(norm2(X), sum((norm2(f(X)) for f in maps), Fraction(0))) for X in points]
    return CertificateResult(case, instance, holds, "trivial" if holds else "failed",
                             multipliers=multipliers, witness=witness, max_ratio=_max_ratio(pairs))

# -- σ̃ split ------------------------------------------------------------------------------

def certify_sigma_split(ctx: TwistedContext, Q: frozenset, R: frozenset, fixed_part: bool,
                        sampler: RationalSampler,
                        ratio_samples: int = CERTIFICATE_RATIO_SAMPLES) -> CertificateResult:
    """
    ‖H₂‖ ≤ c‖H₁‖ on the support of σ̃_Q^R with H₂ ∈ 𝔞_R^G (fixed_part=False) or
    H₂ ∈ 𝔞_{R̃⁻}^{G̃} (fixed_part=True): the closed σ̃ cone meets that subspace in 0.
    """
    rs = ctx.rs
    pm = plus_minus(ctx.theta, Q, R)
    instance = {"Q": Q, "R": R, "split": "fixed" if fixed_part else "plain"}
    if not pm.exists:
        return CertificateResult(CertificateCase.SIGMA_SPLIT, instance, True, "vacuous")
    rows = _sigma_rows(ctx, Q, R, pm.plus)
    if fixed_part:
        target = list(ctx.std_basis(pm.minus, ctx.full).coweights)
        split = lambda H: ctx.theta.average(project_a(rs, pm.minus, H))
    else:
        target = list(relative_bases(rs, R, ctx.full).coweights)
        split = lambda H: project_a(rs, R, H)
    space = list(relative_bases(rs, Q, ctx.full).coweights)
    points = _interior_samples(rows, space, rs.dim, sampler, ratio_samples)
    if points is None:
        return CertificateResult(CertificateCase.SIGMA_SPLIT, instance, True, "vacuous")
    holds, multipliers, witness = _decide(rows, target, rs.dim)
    pairs = []
    for H in points:
        H2 = split(H)
        pairs.append((norm2(H2), norm2(sub(H, H2))))
    return CertificateResult(CertificateCase.SIGMA_SPLIT, instance, holds, "trivial" if holds else "failed",
                             multipliers=multipliers, witness=witness, max_ratio=_max_ratio(pairs))

# -- fixed points ---------------------------------------------------------------------------

def _one_minus_s(ctx: TwistedContext, s0: int):
    return lambda v: sub(v, ctx.W.act(s0, ctx.theta.apply(v)))

def fixed_point_dichotomy(ctx: TwistedContext, P: frozenset, Q: frozenset, s0: int,
                          sampler: RationalSampler,
                          ratio_samples: int = CERTIFICATE_RATIO_SAMPLES) -> CertificateResult:
    """
    For stable P, s = s₀⋊θ₀ with s₀ ∈ W^P and Q ⊆ P: either (1 − s) is bounded
    below on the closed P-chamber of 𝔞_Q^P, or a fixed Y exhibits a proper
    stable P₁ with Q ⊆ P₁ ⊊ P and s₀ ∈ W^{M₁}.
    """
    rs = ctx.rs
    W = ctx.W
    if not (ctx.theta.is_stable(P) and Q <= P and W.in_parabolic(s0, P)):
        raise ParabolicInclusionError("need θ₀-stable P ⊇ Q and s₀ ∈ W^P")
    instance = {"P": P, "Q": Q, "s0": W.word(s0)}
    one_minus_s = _one_minus_s(ctx, s0)
    space = list(relative_bases(rs, Q, P).coweights)
    rows = [rs.simple_roots[i] for i in sorted(P)]
    kernel = _kernel_in(space, [one_minus_s], rs.dim)
    result = cone_meets_subspace_trivially(rows, kernel, rs.dim)

    if result.trivial:
        holds = replay_cone_certificate(rows, kernel, result.multipliers)
        pairs = []
        for _ in range(ratio_samples):
            X = combine([sampler.positive() for _ in space], space, rs.dim)
            pairs.append((norm2(X), norm2(one_minus_s(X))))
        return CertificateResult(CertificateCase.FIXED_POINT_DICHOTOMY, instance, holds, "branch-1",
                                 multipliers=result.multipliers, max_ratio=_max_ratio(pairs))

    Y = result.witness
    P1 = frozenset(i for i in P if dot(rs.simple_roots[i], Y) == 0)
    holds = ctx.theta.apply(Y) == Y and W.act(s0, Y) == Y
    holds = holds and ctx.theta.is_stable(P1) and Q <= P1 and P1 != P and W.in_parabolic(s0, P1)
    return CertificateResult(CertificateCase.FIXED_POINT_DICHOTOMY, instance, holds, "branch-2",
                             witness=Y, extra={"P1": jsonable(P1)})

def fixed_point_kernel(ctx: TwistedContext, Q: frozenset, R: frozenset, s0: int,
                       sampler: RationalSampler,
                       ratio_samples: int = CERTIFICATE_RATIO_SAMPLES) -> CertificateResult:
    """
    With a unique stable P̃ satisfying Q ⊆ P ⊆ R and s₀ ∈ W^P: the closed
    σ̃_Q^R cone in 𝔞_Q^G meets ker(1 − s) in 0.
    """
    rs = ctx.rs
    theta = ctx.theta
    low = theta.closure(Q | ctx.W.support(s0))
    top = theta.interior(R)
    instance = {"Q": Q, "R": R, "s0": ctx.W.word(s0)}
    if low != top:
        raise ParabolicInclusionError("the stable parabolic between Q and R is not unique")
    one_minus_s = _one_minus_s(ctx, s0)
    rows = _sigma_rows(ctx, Q, R, top)
    space = list(relative_bases(rs, Q, ctx.full).coweights)
    points = _interior_samples(rows, space, rs.dim, sampler, ratio_samples)
    if points is None:
        return CertificateResult(CertificateCase.FIXED_POINT_KERNEL, instance, True, "vacuous")
    kernel = _kernel_in(space, [one_minus_s], rs.dim)
    holds, multipliers, witness = _decide(rows, kernel, rs.dim)
    pairs = [(norm2(H), norm2(one_minus_s(H))) for H in points]
    return CertificateResult(CertificateCase.FIXED_POINT_KERNEL, instance, holds, "trivial" if holds else "failed",
                             multipliers=multipliers, witness=witness, max_ratio=_max_ratio(pairs))

# -- case drivers --------------------------------------------------------------------

def _pairs(ctx: TwistedContext):
    for R in enumerate_standard_parabolics(ctx.rs):
        for Q in interval(frozenset(), R):
            yield Q, R

def _instances(ctx: TwistedContext, case: CertificateCase, sampler: RationalSampler, ratio_samples: int):
    theta = ctx.theta
    W = ctx.W
    if case == CertificateCase.Q_MAP:
        for Q in enumerate_standard_parabolics(ctx.rs):
            yield lambda Q=Q: certify_q_map(ctx, Q, sampler, ratio_samples)
    elif case == CertificateCase.Q_MAP_BALANCED:
        for Q, R in _pairs(ctx):
            if theta.closure(Q) == theta.interior(R):
                yield lambda Q=Q, R=R: certify_q_map_balanced(ctx, Q, R, sampler, None, ratio_samples)
    elif case == CertificateCase.Q_MAP_SHIFTED:
        for Q, R in _pairs(ctx):
            if theta.closure(Q) == theta.interior(R):
                for Pp in interval(q_kernel_part(theta, Q), Q):
                    yield lambda Q=Q, R=R, Pp=Pp: certify_q_map_balanced(ctx, Q, R, sampler, Pp, ratio_samples)
    elif case == CertificateCase.SIGMA_SPLIT:
        for Q, R in _pairs(ctx):
            if plus_minus(theta, Q, R).exists:
                for fixed in (False, True):
                    yield lambda Q=Q, R=R, fixed=fixed: certify_sigma_split(ctx, Q, R, fixed, sampler,
                                                                            ratio_samples)
    elif case == CertificateCase.FIXED_POINT_DICHOTOMY:
        for P in ctx.standard_subsets():
            for Q in interval(frozenset(), P):
                for s0 in W.parabolic_subgroup(P):
                    yield lambda P=P, Q=Q, s0=s0: fixed_point_dichotomy(ctx, P, Q, s0, sampler, ratio_samples)
    elif case == CertificateCase.FIXED_POINT_KERNEL:
        for Q, R in _pairs(ctx):
            if not plus_minus(theta, Q, R).exists:
                continue
            top = theta.interior(R)
            for s0 in W.parabolic_subgroup(top):
                if theta.closure(Q | W.support(s0)) == top:
                    yield lambda Q=Q, R=R, s0=s0: fixed_point_kernel(ctx, Q, R, s0, sampler, ratio_samples)

def count_instances(ctx: TwistedContext, case: CertificateCase | str) -> int:
    """Number of instances of one case on the frame"""
    return sum(1 for _ in _instances(ctx, CertificateCase(case), RationalSampler(0), 0))

def cone_kernel_certificates(ctx: TwistedContext, case: CertificateCase | str, n_samples: int,
                             seed: int | RationalSampler) -> list[CertificateResult]:
    """
    Every instance of one case, enumerated exhaustively. ``n_samples`` is the
    number of points per instance behind the empirical ratio.
    """
    case = CertificateCase(case)
    sampler = seed if isinstance(seed, RationalSampler) else RationalSampler(seed)
    return [build() for build in _instances(ctx, case, sampler, n_samples)]


def verify_certificates(ctx: TwistedContext, n_samples: int, seed: int | RationalSampler,
                        cases=tuple(CertificateCase)) -> SampleTally:
    """
    All cases folded into one tally; notes carry per-case verdict and instance
    counts and maximal ratios. Ratio points per instance are capped at
    CERTIFICATE_RATIO_SAMPLES.
    """
    sampler = seed if isinstance(seed, RationalSampler) else RationalSampler(seed)
    tally = SampleTally()
    for case in cases:
        case = CertificateCase(case)
        verdicts: dict[str, int] = {}
        worst: Fraction | None = None
        results = cone_kernel_certificates(ctx, case, min(n_samples, CERTIFICATE_RATIO_SAMPLES), sampler.fork())
        for result in results:
            verdicts[result.verdict] = verdicts.get(result.verdict, 0) + 1
            if result.max_ratio is not None:
                worst = result.max_ratio if worst is None else max(worst, result.max_ratio)
            tally.record(result.holds, **result.as_dict())
        tally.notes[case.value] = {"instances": len(results), "verdicts": verdicts, "max_ratio": worst}
        logger.info("certificates %s on %s: %s", case.value, ctx.label, verdicts)
    if not tally.passed:
        logger.warning("certificates failed %d/%d on %s", tally.failed, tally.checked, ctx.label)
    return tally
