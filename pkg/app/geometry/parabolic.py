"""
Standard parabolics as subsets of simple-root indices, the subspaces 𝔞_P^Q
and the relative bases Δ_P^Q, Δ̂_P^Q with their dual coroot lattices
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from ..core.errors import ParabolicInclusionError, SpecParseError
from ..core.rational import Matrix, Vector, determinant, dot, mat_vec, projector, sub
from ..core.sampling import RationalSampler, SampleTally
from .root_system import RootSystem

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RelativeBasis:
    """
    Bases attached to P ⊆ Q, all carried as ambient vectors.

    ``delta`` (Δ_P^Q) pairs with ``coweights`` to the identity, ``delta_hat``
    (Δ̂_P^Q) pairs with ``coroots``; the coroots span the lattice of
    covolume 1 on 𝔞_P^Q. ``indices`` names the simple roots (or θ₀-orbits)
    behind each position.
    """
    P: frozenset
    Q: frozenset
    indices: tuple[frozenset, ...]
    delta: tuple[Vector, ...]
    delta_hat: tuple[Vector, ...]
    coroots: tuple[Vector, ...]
    coweights: tuple[Vector, ...]

    @property
    def dimension(self) -> int:
        return len(self.delta)

    def position(self, index: int) -> int:
        return next(k for k, orbit in enumerate(self.indices) if index in orbit)


def enumerate_standard_parabolics(rs: RootSystem) -> list[frozenset]:
    """All 2^rank subsets of Δ, smallest first"""
    return [frozenset(c) for size in range(rs.rank + 1) for c in combinations(range(rs.rank), size)]


def interval(P: frozenset, R: frozenset) -> list[frozenset]:
    """Standard Q with P ⊆ Q ⊆ R"""
    if not P <= R:
        raise ParabolicInclusionError(f"{format_parabolic(P)} ⊄ {format_parabolic(R)}")
    free = sorted(R - P)
    return [P | frozenset(c) for size in range(len(free) + 1) for c in combinations(free, size)]


def format_parabolic(S: Iterable[int]) -> str:
    return "{" + ",".join(str(i + 1) for i in sorted(S)) + "}"


def parse_parabolic(text: str, rank: int) -> frozenset:
    """Parse 1-based "1,3", "{1,3}", "" (P₀) or "G" (all of Δ)"""
    text = (text or "").strip().strip("{}").strip()
    if text.upper() == "G":
        return frozenset(range(rank))
    if not text:
        return frozenset()
    try:
        out = frozenset(int(x) - 1 for x in text.split(","))
    except ValueError:
        raise SpecParseError(f"malformed parabolic {text!r}")
    if any(not 0 <= i < rank for i in out):
        raise SpecParseError(f"parabolic {text!r} out of range for rank {rank}")
    return out


def a_dim(rs: RootSystem, P: frozenset) -> int:
    """a_P − a_G = dim 𝔞_P^G"""
    return rs.rank - len(P)


@lru_cache(maxsize=None)
def levi_projector(rs: RootSystem, S: frozenset) -> Matrix:
    """Orthogonal projector onto 𝔞₀^S = span{α_i : i ∈ S}"""
    return projector(tuple(rs.simple_roots[i] for i in sorted(S)), rs.dim)


def project_a(rs: RootSystem, P: frozenset, v: Vector) -> Vector:
    """Projection onto 𝔞_P^G"""
    return sub(rs.project_G(v), mat_vec(levi_projector(rs, P), v))


def project_rel(rs: RootSystem, P: frozenset, Q: frozenset, v: Vector) -> Vector:
    """Projection onto 𝔞_P^Q"""
    return sub(mat_vec(levi_projector(rs, Q), v), mat_vec(levi_projector(rs, P), v))


@lru_cache(maxsize=None)
def relative_bases(rs: RootSystem, P: frozenset, Q: frozenset) -> RelativeBasis:
    if not P <= Q:
        raise ParabolicInclusionError(f"{format_parabolic(P)} ⊄ {format_parabolic(Q)}")
    idx = sorted(Q - P)
    p_q = levi_projector(rs, Q)
    return RelativeBasis(
        P=P,
        Q=Q,
        indices=tuple(frozenset({i}) for i in idx),
        delta=tuple(project_a(rs, P, rs.simple_roots[i]) for i in idx),
        delta_hat=tuple(mat_vec(p_q, rs.fund_weights[i]) for i in idx),
        coroots=tuple(project_a(rs, P, rs.coroots[i]) for i in idx),
        coweights=tuple(mat_vec(p_q, rs.fund_coweights[i]) for i in idx),
    )


def base_angle_check(basis: RelativeBasis) -> tuple[bool, bool]:
    """(Δ_P^Q obtuse, Δ̂_P^Q acute)"""
    n = basis.dimension
    obtuse = all(dot(basis.delta[i], basis.delta[j]) <= 0 for i in range(n) for j in range(n) if i != j)
    acute = all(dot(basis.delta_hat[i], basis.delta_hat[j]) >= 0 for i in range(n) for j in range(n))
    return obtuse, acute


def lattice_volume(basis: RelativeBasis, vectors) -> Fraction:
    """Covolume of the lattice spanned by vectors in 𝔞_P^Q (coroot lattice has covolume 1)"""
    return abs(determinant([[dot(w, v) for w in basis.delta_hat] for v in vectors]))


def d_min(rs: RootSystem, X: Vector) -> Fraction:
    """d_{P₀}(X) = min over simple α of α(X)"""
    return min(rs.alpha_values(X))


def positive_combination(basis: RelativeBasis) -> bool:
    """Each ϖ ∈ Δ̂_P^Q has nonnegative coordinates on Δ_P^Q"""
    return all(dot(w, c) >= 0 for w in basis.delta_hat for c in basis.coweights)


def binomial_sum(rs: RootSystem, P: frozenset, R: frozenset) -> int:
    return sum((-1) ** (a_dim(rs, P) - a_dim(rs, Q)) for Q in interval(P, R))


def verify_positivity_lemmas(
    rs: RootSystem, P: frozenset, Q: frozenset, R: frozenset, samples: int, sampler: RationalSampler
) -> dict[str, SampleTally]:
    """
    Sampled checks of the four positivity lemmas on P ⊆ Q ⊆ R (standard).

    Points are drawn so the hypotheses usually hold; a sample whose hypotheses
    fail is counted as skipped.
    """
    names = ("root-positive", "coweight-positive", "projected-root", "regular-bound")
    tallies = {name: SampleTally() for name in names}
    empty = frozenset()
    b_pq = relative_bases(rs, P, Q)
    b_pr = relative_bases(rs, P, R)
    b_qr = relative_bases(rs, Q, R)
    b_0p = relative_bases(rs, empty, P)
    b_p = relative_bases(rs, P, frozenset(range(rs.rank)))
    b_q_g = relative_bases(rs, Q, frozenset(range(rs.rank)))

    def rest(keep_out: frozenset) -> Vector:
        return project_a(rs, keep_out, sampler.alpha_point(rs))

    for _ in range(samples):
        # α(H) > 0 on Δ_P^Q, ϖ(H) ≤ 0 on Δ̂_{P₀}^P  ⇒  γ(H) > 0 for γ ∈ Δ^Q − Δ^P
        H = tuple(sum(parts) for parts in zip(
            sampler.combination(b_pq.coweights, rs.dim, "positive"),
            sampler.combination(b_0p.coroots, rs.dim, "nonpositive"),
            rest(Q),
        ))
        hyp = all(dot(a, H) > 0 for a in b_pq.delta) and all(dot(w, H) <= 0 for w in b_0p.delta_hat)
        if not hyp:
            tallies["root-positive"].skip()
        else:
            ok = all(dot(rs.simple_roots[i], H) > 0 for i in Q - P)
            tallies["root-positive"].record(ok, P=P, Q=Q, H=H)

        # α(X) > 0 on Δ_P^Q ⇒ ϖ(X) > 0 on Δ̂_P^Q
        X = tuple(sum(parts) for parts in zip(
            sampler.combination(b_pq.coweights, rs.dim, "positive"),
            sampler.combination(b_0p.coroots, rs.dim, "any"),
            rest(Q),
        ))
        if not all(dot(a, X) > 0 for a in b_pq.delta):
            tallies["coweight-positive"].skip()
        else:
            tallies["coweight-positive"].record(all(dot(w, X) > 0 for w in b_pq.delta_hat), P=P, Q=Q, X=X)

        # α(X) > 0 on Δ_P^R ⇒ ᾱ(X) ≥ α(X) > 0 for the projections onto 𝔞_Q
        X = tuple(sum(parts) for parts in zip(
            sampler.combination(b_pr.coweights, rs.dim, "positive"),
            rest(R),
        ))
        if not all(dot(a, X) > 0 for a in b_pr.delta):
            tallies["projected-root"].skip()
        else:
            ok = all(
                dot(b_qr.delta[b_qr.position(i)], X) >= dot(b_pr.delta[b_pr.position(i)], X) > 0
                for i in R - Q
            )
            tallies["projected-root"].record(ok, P=P, Q=Q, R=R, X=X)

        # X regular ⇒ ᾱ(X) ≥ α(X) ≥ d_{P₀}(X) for ᾱ ∈ Δ_P
        X = sampler.regular_point(rs)
        d = d_min(rs, X)
        if d <= 0:
            tallies["regular-bound"].skip()
        else:
            ok = all(dot(b_p.delta[b_p.position(i)], X) >= dot(rs.simple_roots[i], X) >= d
                     for i in set(range(rs.rank)) - P)
            ok = ok and all(dot(b_q_g.delta[b_q_g.position(i)], X) >= d for i in set(range(rs.rank)) - Q)
            tallies["regular-bound"].record(ok, P=P, X=X)
    return tallies
