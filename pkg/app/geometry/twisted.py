"""
Diagram automorphisms θ₀ and the twisted frame: θ₀-stable parabolics, the
orbit-averaged bases on θ₀-fixed subspaces, Q⁺ / R⁻, the functions σ and σ̃,
twisted Weyl sets and η̃.

TwistedContext plugs into every evaluator of ``cones`` so τ̃, Γ̃ and the
hull construction run unchanged on the fixed subspaces.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from ..core.errors import InvalidTwistError, ParabolicInclusionError, SpecParseError
from ..core.rational import (
    Matrix,
    Vector,
    add,
    combine,
    dot,
    identity,
    is_zero,
    mat_add,
    mat_mul,
    mat_scale,
    mat_vec,
    nullspace,
    rank,
    scale,
    sub,
    transpose,
)
from ..core.sampling import RationalSampler, SampleTally, run_samples
from ..models.enums import IdentityId, RootType
from . import cones
from .context import ConeContext
from .parabolic import (
    RelativeBasis,
    base_angle_check,
    enumerate_standard_parabolics,
    format_parabolic,
    interval,
    levi_projector,
    positive_combination,
    project_a,
    project_rel,
    relative_bases,
)
from .root_system import RootSystem, system_from_spec
from .weyl import WeylGroup

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiagramAutomorphism:
    """
    θ₀ given by a Cartan-preserving permutation of the simple roots.

    ``matrix`` is the induced isometry of 𝔞₀: it permutes the simple roots and
    fixes 𝔞_G pointwise. ``average`` is the projector onto its fixed subspace.
    """
    perm: tuple[int, ...]
    matrix: Matrix
    average_matrix: Matrix
    order: int
    label: str

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.perm))

    def apply(self, v: Vector) -> Vector:
        return mat_vec(self.matrix, v)

    def average(self, v: Vector) -> Vector:
        """(1/ℓ) Σ θ₀^r(v)"""
        return mat_vec(self.average_matrix, v)

    def image(self, S) -> frozenset:
        return frozenset(self.perm[i] for i in S)

    def orbit(self, i: int) -> frozenset:
        out = {i}
        j = self.perm[i]
        while j != i:
            out.add(j)
            j = self.perm[j]
        return frozenset(out)

    def orbits(self, S=None) -> list[frozenset]:
        """Orbits contained in S (all orbits by default), ordered by smallest index"""
        S = frozenset(range(len(self.perm))) if S is None else frozenset(S)
        found = {self.orbit(i) for i in S}
        return sorted((o for o in found if o <= S), key=min)

    def is_stable(self, S) -> bool:
        return self.image(S) == frozenset(S)

    def closure(self, S) -> frozenset:
        """Q⁺: smallest stable set containing S"""
        out = frozenset()
        for i in S:
            out |= self.orbit(i)
        return out

    def interior(self, S) -> frozenset:
        """R⁻: union of the orbits contained in S"""
        return frozenset(i for i in S if self.orbit(i) <= frozenset(S))


def build_automorphism(rs: RootSystem, perm, label: str | None = None) -> DiagramAutomorphism:
    """
    Validate perm against the Cartan matrix and build the induced map.

    :raises InvalidTwistError: perm is not a permutation or breaks the Cartan matrix
    """
    perm = tuple(int(i) for i in perm)
    n = rs.rank
    if sorted(perm) != list(range(n)):
        raise InvalidTwistError(f"{[i + 1 for i in perm]} is not a permutation of 1..{n}")
    if any(rs.cartan[perm[i]][perm[j]] != rs.cartan[i][j] for i in range(n) for j in range(n)):
        raise InvalidTwistError(f"{[i + 1 for i in perm]} does not preserve the Cartan matrix of {rs.label}")

    # θ(v) = (v − P_G v) + Σ_j ⟨ϖ_j^∨, v⟩ α_{θ(j)}
    columns = []
    for k in range(rs.dim):
        e = tuple(Fraction(int(k == m)) for m in range(rs.dim))
        moved = combine([dot(w, e) for w in rs.fund_coweights],
                        [rs.simple_roots[perm[j]] for j in range(n)], rs.dim)
        columns.append(add(sub(e, rs.project_G(e)), moved))
    matrix = transpose(tuple(columns))

    order = 1
    seen: set[int] = set()
    for i in range(n):
        if i in seen:
            continue
        cycle, j = 0, i
        while j not in seen:
            seen.add(j)
            j = perm[j]
            cycle += 1
        order = lcm(order, cycle)

    total, power = identity(rs.dim), identity(rs.dim)
    for _ in range(order - 1):
        power = mat_mul(matrix, power)
        total = mat_add(total, power)
    average = mat_scale(Fraction(1, order), total)
    if label is None:
        label = "id" if all(i == j for i, j in enumerate(perm)) else "perm=" + ",".join(str(i + 1) for i in perm)
    return DiagramAutomorphism(perm=perm, matrix=matrix, average_matrix=average, order=order, label=label)


def parse_twist(rs: RootSystem, text: str | None) -> DiagramAutomorphism:
    """
    Parse "id", "flip", "swap" or "perm=3,2,1" (1-based) for the given system.

    "flip" reverses the diagram of A_n and swaps the two short legs of D_n;
    "swap" is the D_n leg swap.
    """
    raw = (text or "").strip()
    key = raw.lower()
    n = rs.rank
    if key in ("", "id", "identity"):
        return build_automorphism(rs, range(n), "id")
    if key == "flip" and rs.root_type == RootType.A:
        return build_automorphism(rs, reversed(range(n)), "flip")
    if key in ("flip", "swap"):
        if rs.root_type != RootType.D:
            raise InvalidTwistError(f"{key!r} is not defined on {rs.label}")
        perm = list(range(n))
        perm[n - 2], perm[n - 1] = n - 1, n - 2
        return build_automorphism(rs, perm, key)
    if key.startswith("perm="):
        try:
            perm = [int(x) - 1 for x in key[len("perm="):].split(",")]
        except ValueError:
            raise SpecParseError(f"malformed twist {raw!r}")
        return build_automorphism(rs, perm)
    raise SpecParseError(f"unknown twist {raw!r}")


def system_with_twist(text: str, twist: str | None = None) -> tuple[RootSystem, DiagramAutomorphism | None]:
    """Split "A3:flip" into the system and its twist; twist=None keeps the untwisted frame"""
    head, _, tail = (text or "").partition(":")
    rs = system_from_spec(head)
    spec = twist if twist is not None else (tail or None)
    if spec is None:
        return rs, None
    return rs, parse_twist(rs, spec)


# -- bases on θ₀-fixed subspaces ------------------------------------------------------

@lru_cache(maxsize=None)
def twisted_relative_bases(rs: RootSystem, theta: DiagramAutomorphism, P: frozenset, Q: frozenset) -> RelativeBasis:
    """
    Δ_{P̃}^{Q̃} and Δ̂_{P̃}^{Q̃} on the θ₀-fixed part of 𝔞_P^Q.

    Roots and weights are averaged over each θ₀-orbit of Δ^Q − Δ^P; coroots and
    coweights are summed, so the pairings stay the identity.
    """
    if not P <= Q:
        raise ParabolicInclusionError(f"{format_parabolic(P)} ⊄ {format_parabolic(Q)}")
    if not (theta.is_stable(P) and theta.is_stable(Q)):
        raise ParabolicInclusionError(f"{format_parabolic(P)} or {format_parabolic(Q)} is not θ₀-stable")
    p_q = levi_projector(rs, Q)
    orbits = theta.orbits(Q - P)

    def mean(vectors):
        vectors = list(vectors)
        return scale(Fraction(1, len(vectors)), combine([Fraction(1)] * len(vectors), vectors, rs.dim))

    def total(vectors):
        vectors = list(vectors)
        return combine([Fraction(1)] * len(vectors), vectors, rs.dim)

    return RelativeBasis(
        P=P,
        Q=Q,
        indices=tuple(orbits),
        delta=tuple(mean(project_a(rs, P, rs.simple_roots[i]) for i in sorted(o)) for o in orbits),
        delta_hat=tuple(mean(mat_vec(p_q, rs.fund_weights[i]) for i in sorted(o)) for o in orbits),
        coroots=tuple(total(project_a(rs, P, rs.coroots[i]) for i in sorted(o)) for o in orbits),
        coweights=tuple(total(mat_vec(p_q, rs.fund_coweights[i]) for i in sorted(o)) for o in orbits),
    )


def twisted_parabolics(rs: RootSystem, theta: DiagramAutomorphism) -> list[frozenset]:
    """θ₀-stable standard parabolics, smallest first"""
    return [S for S in enumerate_standard_parabolics(rs) if theta.is_stable(S)]


class TwistedContext(ConeContext):
    """Frame of the θ₀-stable parabolics; every space is replaced by its θ₀-fixed part"""

    twisted = True

    def __init__(self, rs: RootSystem, theta: DiagramAutomorphism, W: WeylGroup | None = None):
        super().__init__(rs, W)
        self.theta = theta
        self.plain = ConeContext(rs, self.W)
        self._stable = twisted_parabolics(rs, theta)
        self._fixed_elements = frozenset(s for s in range(len(self.W)) if self.W.twist(s, theta.perm) == s)

    @property
    def label(self) -> str:
        return f"{self.rs.label}:{self.theta.label}"

    def standard_subsets(self) -> list[frozenset]:
        return self._stable

    def std_interval(self, P: frozenset, R: frozenset) -> list[frozenset]:
        return [S for S in interval(P, R) if self.theta.is_stable(S)]

    def admissible(self, P) -> bool:
        return self.theta.is_stable(P.std) and P.u in self._fixed_elements

    def admissible_element(self, s: int) -> bool:
        return s in self._fixed_elements

    def a_std(self, S: frozenset) -> int:
        """a_{S̃} − a_{G̃}: number of θ₀-orbits outside S"""
        return len(self.theta.orbits(self.full - frozenset(S)))

    def std_basis(self, P: frozenset, Q: frozenset) -> RelativeBasis:
        return twisted_relative_bases(self.rs, self.theta, P, Q)

    def fixed(self, v: Vector) -> Vector:
        return self.theta.average(v)

    def project_std(self, S: frozenset, v: Vector) -> Vector:
        return project_a(self.rs, S, self.theta.average(v))


def make_context(rs: RootSystem, theta: DiagramAutomorphism | None = None) -> ConeContext:
    if theta is None:
        return ConeContext(rs)
    return TwistedContext(rs, theta)


# -- Q⁺ / R⁻ ----------------------------------------------------------------------

@dataclass(frozen=True)
class PlusMinus:
    plus: frozenset
    minus: frozenset

    @property
    def exists(self) -> bool:
        """A stable P with Q ⊆ P ⊆ R exists iff Q⁺ ⊆ R⁻"""
        return self.plus <= self.minus


def plus_minus(theta: DiagramAutomorphism, Q: frozenset, R: frozenset) -> PlusMinus:
    if not frozenset(Q) <= frozenset(R):
        raise ParabolicInclusionError(f"{format_parabolic(Q)} ⊄ {format_parabolic(R)}")
    return PlusMinus(theta.closure(Q), theta.interior(R))


def fixed_part(rs: RootSystem, theta: DiagramAutomorphism, Q: frozenset, R: frozenset) -> list[Vector]:
    """Basis of the θ₀-fixed vectors of 𝔞_Q^R (Q, R need not be stable)"""
    span = relative_bases(rs, Q, R).coroots
    if not span:
        return []
    moved = [sub(theta.apply(v), v) for v in span]
    rows = [tuple(v[k] for v in moved) for k in range(rs.dim)]
    return [combine(c, span, rs.dim) for c in nullspace(rows, len(span))]


def same_span(first, second, dim: int) -> bool:
    first, second = list(first), list(second)
    r1 = rank(first, dim) if first else 0
    r2 = rank(second, dim) if second else 0
    return r1 == r2 == (rank(first + second, dim) if first or second else 0)


# -- σ, σ̃ -------------------------------------------------------------------------

def eval_sigma(rs: RootSystem, Q: frozenset, R: frozenset, H: Vector) -> int:
    """σ_Q^R: α > 0 on Δ_Q^R, α ≤ 0 on Δ_Q − Δ_Q^R, ϖ > 0 on Δ̂_R"""
    full = frozenset(range(rs.rank))
    if not Q <= R:
        raise ParabolicInclusionError(f"{format_parabolic(Q)} ⊄ {format_parabolic(R)}")
    if not _signs_on_Q(rs, Q, R, H):
        return 0
    return int(all(dot(w, H) > 0 for w in relative_bases(rs, R, full).delta_hat))


def _signs_on_Q(rs: RootSystem, Q: frozenset, R: frozenset, H: Vector) -> bool:
    base = relative_bases(rs, Q, frozenset(range(rs.rank)))
    for orbit, a in zip(base.indices, base.delta):
        value = dot(a, H)
        if orbit <= R:
            if value <= 0:
                return False
        elif value > 0:
            return False
    return True


def eval_sigma_tilde(ctx: TwistedContext, Q: frozenset, R: frozenset, H: Vector,
                     P: frozenset | None = None) -> int:
    """
    σ̃_Q^R, computed with the stable P (default Q⁺) in condition (iii).

    Zero when no stable P lies between Q and R.
    """
    pm = plus_minus(ctx.theta, Q, R)
    if not pm.exists:
        return 0
    P = pm.plus if P is None else frozenset(P)
    if not (ctx.theta.is_stable(P) and pm.plus <= P <= pm.minus):
        raise ParabolicInclusionError(f"{format_parabolic(P)} is not a stable parabolic between Q and R")
    if not _signs_on_Q(ctx.rs, Q, R, H):
        return 0
    return int(all(dot(w, H) > 0 for w in ctx.std_basis(P, ctx.full).delta_hat))


def sigma_tilde_by_P(ctx: TwistedContext, Q: frozenset, R: frozenset, H: Vector) -> dict[frozenset, int]:
    """σ̃_Q^R evaluated with every admissible P̃"""
    pm = plus_minus(ctx.theta, Q, R)
    if not pm.exists:
        return {}
    return {P: eval_sigma_tilde(ctx, Q, R, H, P) for P in ctx.std_interval(pm.plus, pm.minus)}


# -- Weyl sets, η̃, q --------------------------------------------------------------

def twisted_weyl_sets(ctx: TwistedContext, M: frozenset, M2: frozenset | None = None) -> tuple[int, ...]:
    """θ₀-fixed elements of W(𝔞_M) (or of W(𝔞_M, 𝔞_{M'}))"""
    W = ctx.W
    base = W.weyl_set_M(frozenset(M)) if M2 is None else W.weyl_set_PQ(frozenset(M), frozenset(M2))
    return tuple(s for s in base if ctx.admissible_element(s))


def twisted_chambers(ctx: TwistedContext, M: frozenset) -> list[tuple[int, frozenset, int]]:
    """(s, Q_s, u) for s ∈ W(ã_M): the chamber labelled s, its parabolic and the frame element"""
    return [(s, P.std, P.u) for s, P in ctx.chambers(frozenset(M))]


def eta_tilde(ctx: TwistedContext, Q: frozenset, R: frozenset, t: int | None = None) -> int:
    """η̃(Q, R[; t]) = Σ (−1)^{a_P̃ − a_G̃} over stable P with Q ⊆ P ⊆ R (and t ∈ W^P)"""
    low = frozenset(Q) | (ctx.W.support(t) if t is not None else frozenset())
    if not low <= frozenset(R):
        return 0
    return sum(-1 if ctx.a_std(P) % 2 else 1 for P in ctx.std_interval(low, frozenset(R)))


def q_map(ctx: TwistedContext, Q: frozenset, X: Vector) -> Vector:
    """q(X) = ((1 − θ₀)X)_Q"""
    return project_a(ctx.rs, frozenset(Q), sub(X, ctx.theta.apply(X)))


def q_kernel_part(theta: DiagramAutomorphism, Q: frozenset) -> frozenset:
    """Q₀ = Q ∩ θ₀⁻¹Q"""
    return frozenset(i for i in Q if theta.perm[i] in Q)


# -- sampled and exhaustive checks ------------------------------------------------

def _pair_identity(rows, cols) -> bool:
    return all(dot(r, c) == int(i == j) for i, r in enumerate(rows) for j, c in enumerate(cols))


def check_twisted_bases(ctx: TwistedContext, sampler: RationalSampler, tally: SampleTally) -> None:
    rs = ctx.rs
    for R in ctx.standard_subsets():
        for P in ctx.std_interval(frozenset(), R):
            base = ctx.std_basis(P, R)
            obtuse, acute = base_angle_check(base)
            vectors = base.delta + base.delta_hat + base.coroots + base.coweights
            ok = obtuse and acute and positive_combination(base)
            ok = ok and all(ctx.fixed(v) == v for v in vectors)
            ok = ok and all(is_zero(sub(project_rel(rs, P, R, v), v)) for v in base.delta + base.coroots)
            ok = ok and _pair_identity(base.delta, base.coweights) and _pair_identity(base.delta_hat, base.coroots)
            ok = ok and base.dimension == ctx.a_std(P) - ctx.a_std(R)
            ok = ok and same_span(base.coroots, fixed_part(rs, ctx.theta, P, R), rs.dim)
            if ctx.theta.is_identity:
                plain = relative_bases(rs, P, R)
                ok = ok and base.delta == plain.delta and base.coweights == plain.coweights
            tally.record(ok, P=P, R=R, obtuse=obtuse, acute=acute)


def check_plus_minus(ctx: TwistedContext, sampler: RationalSampler, tally: SampleTally) -> None:
    theta = ctx.theta
    rs = ctx.rs
    for R in enumerate_standard_parabolics(rs):
        for Q in interval(frozenset(), R):
            pm = plus_minus(theta, Q, R)
            stable = [P for P in interval(Q, R) if theta.is_stable(P)]
            ok = bool(stable) == pm.exists
            if pm.exists:
                ok = ok and pm.plus in stable and pm.minus in stable
                ok = ok and all(pm.plus <= P <= pm.minus for P in stable)
                twisted = ctx.std_basis(pm.plus, pm.minus).coroots
                ok = ok and same_span(twisted, fixed_part(rs, theta, Q, R), rs.dim)
            tally.record(ok, Q=Q, R=R, plus=pm.plus, minus=pm.minus)


def check_twisted_weyl(ctx: TwistedContext, sampler: RationalSampler, tally: SampleTally) -> None:
    W = ctx.W
    M = sampler.choice(ctx.standard_subsets())
    M2 = sampler.choice(ctx.standard_subsets())
    fixed_set = twisted_weyl_sets(ctx, M)
    ok = all(W.twist(s, ctx.theta.perm) == s for s in fixed_set)
    ok = ok and all(frozenset(W.perms[s][i] for i in M) == M2 for s in twisted_weyl_sets(ctx, M, M2))
    chambers = ctx.chambers(M)
    ok = ok and len(chambers) == len(fixed_set) == len(twisted_chambers(ctx, M))
    lowers = [P for _, P in chambers]
    ok = ok and len(set(lowers)) == len(lowers) and all(ctx.admissible(P) for P in lowers)
    G = ctx.G
    for _, lower in chambers:
        base = ctx.basis(lower, G)
        point = cones.chamber_point(ctx, lower, [sampler.positive() for _ in range(base.dimension)])
        ok = ok and ctx.fixed(point) == point
        ok = ok and all(dot(a, point) > 0 for a in ctx.plain.basis(lower, ctx.plain.G).delta)
    if ctx.theta.is_identity:
        ok = ok and fixed_set == W.weyl_set_M(M)
    tally.record(ok, M=M, M2=M2, fixed=len(fixed_set))


def check_sigma_tilde(ctx: TwistedContext, sampler: RationalSampler, tally: SampleTally) -> None:
    rs = ctx.rs
    R = sampler.choice(enumerate_standard_parabolics(rs))
    Q = R if sampler.rng.random() < 1 / 3 else sampler.choice(interval(frozenset(), R))
    H = sampler.alpha_point(rs)
    values = sigma_tilde_by_P(ctx, Q, R, H)
    value = eval_sigma_tilde(ctx, Q, R, H)
    ok = len(set(values.values())) <= 1 and all(v == value for v in values.values())
    if Q == R:
        ok = ok and value == int(Q == ctx.full)
    if ctx.theta.is_identity:
        ok = ok and value == eval_sigma(rs, Q, R, H)
    G_value = eval_sigma_tilde(ctx, ctx.full, ctx.full, H)
    tally.record(ok and G_value == 1, Q=Q, R=R, H=H, by_P=values)


def _sigma_point(ctx: TwistedContext, Q: frozenset, P: frozenset, sampler: RationalSampler) -> Vector:
    """Random H, half of the time pushed into the support of τ_Q^P τ̂_P̃"""
    rs = ctx.rs
    H = sampler.alpha_point(rs)
    if sampler.rng.random() < 0.5:
        return H
    inner = sampler.combination(relative_bases(rs, Q, P).coweights, rs.dim, "positive")
    outer = sampler.combination(ctx.std_basis(P, ctx.full).coweights, rs.dim, "positive")
    return add(add(inner, outer), scale(Fraction(1, 20), H))


def check_sigma_partition(ctx: TwistedContext, sampler: RationalSampler, tally: SampleTally) -> None:
    rs = ctx.rs
    P = sampler.choice(ctx.standard_subsets())
    Q = sampler.choice(interval(frozenset(), P))
    H = _sigma_point(ctx, Q, P, sampler)
    terms = {R: eval_sigma_tilde(ctx, Q, R, H) for R in interval(P, ctx.full)}
    expected = int(all(dot(a, H) > 0 for a in relative_bases(rs, Q, P).delta))
    expected *= int(all(dot(w, H) > 0 for w in ctx.std_basis(P, ctx.full).delta_hat))
    ok = sum(terms.values()) == expected and all(v in (0, 1) for v in terms.values())
    tally.record(ok, Q=Q, P=P, H=H, terms=terms)


def check_sigma_disjoint(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    """Untwisted: Σ_{R ⊇ P} σ_Q^R = τ_Q^P τ̂_P with disjoint supports"""
    rs = ctx.rs
    full = frozenset(range(rs.rank))
    P = sampler.choice(enumerate_standard_parabolics(rs))
    Q = sampler.choice(interval(frozenset(), P))
    H = sampler.alpha_point(rs)
    if sampler.rng.random() < 0.5:
        H = add(add(sampler.combination(relative_bases(rs, Q, P).coweights, rs.dim, "positive"),
                    sampler.combination(relative_bases(rs, P, full).coweights, rs.dim, "positive")),
                scale(Fraction(1, 20), H))
    terms = [eval_sigma(rs, Q, R, H) for R in interval(P, full)]
    expected = int(all(dot(a, H) > 0 for a in relative_bases(rs, Q, P).delta))
    expected *= int(all(dot(w, H) > 0 for w in relative_bases(rs, P, full).delta_hat))
    tally.record(sum(terms) == expected and max(terms, default=0) <= 1, Q=Q, P=P, H=H)


def check_eta(ctx: TwistedContext, sampler: RationalSampler, tally: SampleTally) -> None:
    rs = ctx.rs
    theta = ctx.theta
    R = sampler.choice(enumerate_standard_parabolics(rs))
    Q = sampler.choice(interval(frozenset(), R))
    t = sampler.choice(range(len(ctx.W))) if sampler.rng.random() < 0.5 else None
    value = eta_tilde(ctx, Q, R, t)
    low = Q | (ctx.W.support(t) if t is not None else frozenset())
    admissible = [P for P in interval(low, R) if theta.is_stable(P)] if low <= R else []
    ok = True
    if admissible:
        # intervalo [P₁, P₂] com P₂ = R⁻
        lowest, top = theta.closure(low), theta.interior(R)
        ok = set(admissible) == set(ctx.std_interval(lowest, top))
    single = len(admissible) == 1
    expected = (-1 if ctx.a_std(theta.interior(R)) % 2 else 1) if single else 0
    tally.record(ok and value == expected, Q=Q, R=R, t=None if t is None else ctx.W.word(t), eta=value)


_REUSED = {
    IdentityId.TWISTED_HULL: cones.check_hull,
    IdentityId.TWISTED_GAMMA_PARTITION: cones.check_gamma_partition,
    IdentityId.TWISTED_GAMMA_DUAL: cones.check_gamma_dual,
    IdentityId.TWISTED_GAMMA_CONVOLUTION: cones.check_gamma_convolution,
    IdentityId.TWISTED_GAMMA_M_CONVOLUTION: cones.check_gamma_M_convolution,
}

TWISTED_CHECKS = {
    IdentityId.TWISTED_BASES: check_twisted_bases,
    IdentityId.PLUS_MINUS: check_plus_minus,
    IdentityId.TWISTED_WEYL: check_twisted_weyl,
    IdentityId.SIGMA_TILDE: check_sigma_tilde,
    IdentityId.SIGMA_PARTITION: check_sigma_partition,
    IdentityId.ETA_TILDE: check_eta,
    **_REUSED,
}

# verificações exaustivas: uma única passada
EXHAUSTIVE = frozenset({IdentityId.TWISTED_BASES, IdentityId.PLUS_MINUS})


def verify_twisted_identities(ctx: TwistedContext, identity_id: IdentityId | str, n_samples: int,
                              seed: int | RationalSampler) -> SampleTally:
    """Run one twisted catalogue identity; "sigma-disjoint" runs on the untwisted frame"""
    identity_id = IdentityId(identity_id)
    sampler = seed if isinstance(seed, RationalSampler) else RationalSampler(seed)
    if identity_id == IdentityId.SIGMA_DISJOINT:
        frame, check = ctx.plain, check_sigma_disjoint
    else:
        frame, check = ctx, TWISTED_CHECKS[identity_id]
    runs = 1 if identity_id in EXHAUSTIVE else n_samples
    tally = run_samples(lambda smp, t: check(frame, smp, t), runs, sampler)
    if not tally.passed:
        logger.warning("%s failed %d/%d on %s: %s", identity_id.value, tally.failed, tally.checked,
                       ctx.label, tally.witnesses[:1])
    return tally
