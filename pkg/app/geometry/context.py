"""
Parabolic frame shared by the cone, Laplace and family computations.

A context fixes which parabolics are admissible (all of them, or only the
θ₀-stable ones), how relative bases are built and what "projection onto 𝔞_P"
means. Semi-standard parabolics are handled by transport to a standard pair.
"""
import logging
from fractions import Fraction

from ..core.errors import ParabolicInclusionError
from ..core.rational import Vector, sub
from .parabolic import RelativeBasis, a_dim, enumerate_standard_parabolics, interval, project_a, relative_bases
from .root_system import RootSystem
from .weyl import SemiStdParabolic, WeylGroup, generate_weyl

logger = logging.getLogger(__name__)


class ConeContext:
    """Untwisted frame: every parabolic containing M₀ is admissible"""

    twisted = False

    def __init__(self, rs: RootSystem, W: WeylGroup | None = None):
        self.rs = rs
        self.W = W or generate_weyl(rs)
        self._bases: dict[tuple[SemiStdParabolic, SemiStdParabolic], RelativeBasis] = {}
        self._elements: list[int] | None = None
        self.full = frozenset(range(rs.rank))

    @property
    def label(self) -> str:
        return self.rs.label

    # -- admissible parabolics --------------------------------------------------------

    def standard_subsets(self) -> list[frozenset]:
        return enumerate_standard_parabolics(self.rs)

    def std_interval(self, P: frozenset, R: frozenset) -> list[frozenset]:
        return interval(P, R)

    def std(self, S) -> SemiStdParabolic:
        return self.W.standard(frozenset(S))

    @property
    def G(self) -> SemiStdParabolic:
        return self.std(self.full)

    @property
    def P0(self) -> SemiStdParabolic:
        return self.std(frozenset())

    def admissible(self, P: SemiStdParabolic) -> bool:
        return True

    def admissible_element(self, s: int) -> bool:
        return True

    def elements(self) -> list[int]:
        if self._elements is None:
            self._elements = [s for s in range(len(self.W)) if self.admissible_element(s)]
        return self._elements

    # -- structure -------------------------------------------------------------

    def a_std(self, S: frozenset) -> int:
        return a_dim(self.rs, S)

    def a(self, P: SemiStdParabolic) -> int:
        """dim 𝔞_P^G (θ₀-fixed part when twisted)"""
        return self.a_std(P.std)

    def contains(self, P: SemiStdParabolic, Q: SemiStdParabolic) -> bool:
        return self.W.contains(P, Q)

    def require(self, P: SemiStdParabolic, Q: SemiStdParabolic) -> frozenset:
        if not self.contains(P, Q):
            raise ParabolicInclusionError(f"{P} ⊄ {Q}")
        return self.W.std_in_frame(P, Q)

    def between(self, P: SemiStdParabolic, R: SemiStdParabolic) -> list[SemiStdParabolic]:
        """Admissible Q with P ⊆ Q ⊆ R"""
        top = self.require(P, R)
        return [self.W.semistandard(S, P.u) for S in self.std_interval(P.std, top)]

    def std_basis(self, P: frozenset, Q: frozenset) -> RelativeBasis:
        return relative_bases(self.rs, P, Q)

    def basis(self, P: SemiStdParabolic, Q: SemiStdParabolic) -> RelativeBasis:
        key = (P, Q)
        if key not in self._bases:
            top = self.require(P, Q)
            base = self.std_basis(P.std, top)
            if P.u:
                u_inv = self.W.inv(P.u)
                move = lambda vs: tuple(self.W.act(u_inv, v) for v in vs)
                base = RelativeBasis(base.P, base.Q, base.indices, move(base.delta),
                                     move(base.delta_hat), move(base.coroots), move(base.coweights))
            self._bases[key] = base
        return self._bases[key]

    def fixed(self, v: Vector) -> Vector:
        return v

    def project_std(self, S: frozenset, v: Vector) -> Vector:
        return project_a(self.rs, S, v)

    def project(self, P: SemiStdParabolic, v: Vector) -> Vector:
        """Projection onto 𝔞_P^G"""
        if not P.u:
            return self.project_std(P.std, v)
        u_inv = self.W.inv(P.u)
        return self.W.act(u_inv, self.project_std(P.std, self.W.act(P.u, v)))

    def project_rel(self, P: SemiStdParabolic, Q: SemiStdParabolic, v: Vector) -> Vector:
        """Projection onto 𝔞_P^Q"""
        return sub(self.project(P, v), self.project(Q, v))

    # -- facets of standard Levis -------------------------------------------------

    def facets(self, M: frozenset) -> list[SemiStdParabolic]:
        """ℱ(M)"""
        return [Q for Q in self.W.facet_decomposition(frozenset(M)).facets if self.admissible(Q)]

    def facets_below(self, M: frozenset, R: SemiStdParabolic) -> list[SemiStdParabolic]:
        """ℱ^R(M)"""
        return [Q for Q in self.facets(M) if self.contains(Q, R)]

    def chambers(self, M: frozenset) -> list[tuple[int, SemiStdParabolic]]:
        """(s, Q_s) for s ∈ W(𝔞_M), i.e. 𝒫(M) with its Weyl labels"""
        dec = self.W.facet_decomposition(frozenset(M))
        return [(s, dec.lower[s]) for s in dec.elements if self.admissible_element(s)]

    def chamber_bounds(self, M: frozenset) -> list[tuple[int, SemiStdParabolic, SemiStdParabolic]]:
        """(s, Q_s, Q^s) for s ∈ W(𝔞_M)"""
        dec = self.W.facet_decomposition(frozenset(M))
        return [(s, dec.lower[s], dec.upper[s]) for s in dec.elements if self.admissible_element(s)]

    def chambers_below(self, M: frozenset, R: SemiStdParabolic) -> list[SemiStdParabolic]:
        """𝒫^R(M)"""
        return [P for _, P in self.chambers(M) if self.contains(P, R)]

    def facet_intervals(self, M: frozenset) -> list[tuple[int, list[SemiStdParabolic]]]:
        dec = self.W.facet_decomposition(frozenset(M))
        return [(s, [Q for Q in dec.intervals[s] if self.admissible(Q)])
                for s in dec.elements if self.admissible_element(s)]

    def sign(self, P: SemiStdParabolic, Q: SemiStdParabolic) -> int:
        return -1 if (self.a(P) - self.a(Q)) % 2 else 1

    def positive_chamber_point(self, M: frozenset, weights) -> Vector:
        """κ = Σ w_i ϖ_i^∨ over the coweights of 𝔞_M^G (positive chamber for w > 0)"""
        base = self.basis(self.std(M), self.G)
        out = [Fraction(0)] * self.rs.dim
        for w, c in zip(weights, base.coweights):
            for k, x in enumerate(c):
                out[k] += w * x
        return tuple(out)
