"""
Weyl group tables, coset representatives, the sets W(𝔞_P, 𝔞_Q), W(𝔞_P, R),
W(𝔞_M), W(M), semi-standard parabolics and the facet decomposition of 𝔞_M
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, wraps
from math import factorial
from typing import Iterable

from ..core.config import WEYL_GROUP_BOUND
from ..core.errors import GroupBoundExceededError
from ..core.rational import Matrix, Vector, mat_vec, transpose
from ..models.enums import RootType
from .root_system import RootSystem

logger = logging.getLogger(__name__)

# Elementos do grupo são índices nas tabelas de WeylGroup
WeylElement = int
StdParabolic = frozenset


def weyl_order(root_type: RootType, rank: int) -> int:
    if root_type == RootType.A:
        return factorial(rank + 1)
    if root_type in (RootType.B, RootType.C):
        return 2 ** rank * factorial(rank)
    if root_type == RootType.D:
        return 2 ** (rank - 1) * factorial(rank)
    return 12


@dataclass(frozen=True)
class SemiStdParabolic:
    """
    Parabolic containing M₀, stored as its root set u⁻¹(Φ⁺ ∪ Φ_S).

    ``u`` is the minimal element of W_S·u, so (std, u) is canonical and equality
    on (std, u) is equality of root sets.
    """
    std: frozenset
    u: int
    roots: frozenset = field(compare=False, hash=False, repr=False)

    @property
    def is_standard(self) -> bool:
        return self.u == 0


@dataclass
class FacetDecomposition:
    levi: frozenset
    elements: list[int]
    lower: dict[int, SemiStdParabolic]
    upper: dict[int, SemiStdParabolic]
    intervals: dict[int, list[SemiStdParabolic]]
    opposite: int

    @property
    def chambers(self) -> list[SemiStdParabolic]:
        """𝒫(M), in the order of W(𝔞_M)"""
        return [self.lower[s] for s in self.elements]

    @property
    def facets(self) -> list[SemiStdParabolic]:
        """ℱ(M) as the disjoint union of the intervals ℱ_s(M)"""
        return [q for s in self.elements for q in self.intervals[s]]


def _per_instance(method):
    """Memoize a method on its WeylGroup, keyed by name and positional arguments"""
    @wraps(method)
    def wrapper(self, *args):
        key = (method.__name__, args)
        if key not in self._cache:
            self._cache[key] = method(self, *args)
        return self._cache[key]
    return wrapper


class WeylGroup:
    """
    The Weyl group of a root system as permutations of root indices.

    Elements are enumerated by breadth-first search from the identity (index 0)
    under left multiplication by simple reflections, so index order is
    length-lexicographic and deterministic.
    """

    def __init__(self, rs: RootSystem, bound: int = WEYL_GROUP_BOUND):
        order = weyl_order(rs.root_type, rs.rank)
        if order > bound:
            logger.error("Weyl group of %s has %d elements, bound is %d", rs.label, order, bound)
            raise GroupBoundExceededError(f"|W({rs.label})| = {order} exceeds bound {bound}")
        self.rs = rs
        n_roots = len(rs.roots)
        identity = bytes(range(n_roots))
        self.perms: list[bytes] = [identity]
        self.words: list[tuple[int, ...]] = [()]
        self.lookup: dict[bytes, int] = {identity: 0}
        queue = deque([0])
        while queue:
            e = queue.popleft()
            base = self.perms[e]
            for i, refl in enumerate(rs.reflection_perms):
                perm = bytes(refl[k] for k in base)
                if perm not in self.lookup:
                    self.lookup[perm] = len(self.perms)
                    self.perms.append(perm)
                    self.words.append((i,) + self.words[e])
                    queue.append(len(self.perms) - 1)
        if len(self.perms) != order:
            raise GroupBoundExceededError(f"enumerated {len(self.perms)} elements, expected {order}")
        self.simple = [self.lookup[bytes(refl)] for refl in rs.reflection_perms]
        self._inverse: dict[int, int] = {}
        self._matrix: dict[int, Matrix] = {}
        self._root_sets: dict[frozenset, frozenset] = {}
        self._cache: dict[tuple, object] = {}
        logger.info("generated W(%s) with %d elements", rs.label, order)

    # -- elementary operations -------------------------------------------------

    def __len__(self) -> int:
        return len(self.perms)

    @property
    def identity(self) -> int:
        return 0

    def length(self, s: int) -> int:
        return len(self.words[s])

    def word(self, s: int) -> tuple[int, ...]:
        return self.words[s]

    def mul(self, s: int, t: int) -> int:
        ps, pt = self.perms[s], self.perms[t]
        return self.lookup[bytes(ps[k] for k in pt)]

    def inv(self, s: int) -> int:
        if s not in self._inverse:
            perm = self.perms[s]
            out = bytearray(len(perm))
            for k, image in enumerate(perm):
                out[image] = k
            self._inverse[s] = self.lookup[bytes(out)]
        return self._inverse[s]

    def from_word(self, word: Iterable[int]) -> int:
        e = 0
        for i in word:
            e = self.mul(e, self.simple[i])
        return e

    def act_root(self, s: int, k: int) -> int:
        return self.perms[s][k]

    def root_is_positive_after(self, s: int, k: int) -> bool:
        return self.perms[s][k] < self.rs.n_positive

    def matrix(self, s: int) -> Matrix:
        """Exact matrix of s on the ambient space (rows act on column vectors)"""
        if s not in self._matrix:
            rs = self.rs
            columns = []
            for k in range(rs.dim):
                e = tuple(Fraction(int(j == k)) for j in range(rs.dim))
                columns.append(self._act_slow(s, e))
            self._matrix[s] = transpose(columns)
        return self._matrix[s]

    def _act_slow(self, s: int, v: Vector) -> Vector:
        rs = self.rs
        v_g = rs.project_G(v)
        rest = [a - b for a, b in zip(v, v_g)]
        perm = self.perms[s]
        for j in range(rs.rank):
            c = sum((a * b for a, b in zip(rs.fund_coweights[j], v_g)), Fraction(0))
            if c:
                image = rs.roots[perm[j]]
                for k in range(rs.dim):
                    rest[k] += c * image[k]
        return tuple(rest)

    def act(self, s: int, v: Vector) -> Vector:
        if s == 0:
            return v
        return mat_vec(self.matrix(s), v)

    # -- inversion sets ---------------------------------------------------------

    def inversion_set(self, s: int, t: int | None = None) -> frozenset:
        """R(s) = {β > 0 : sβ < 0}, or R(s,t) = {β : tβ > 0, sβ < 0}, as root indices"""
        n = self.rs.n_positive
        ps = self.perms[s]
        if t is None:
            return frozenset(k for k in range(n) if ps[k] >= n)
        pt = self.perms[t]
        return frozenset(k for k in range(2 * n) if pt[k] < n and ps[k] >= n)

    # -- parabolic subgroups and cosets ------------------------------------------

    def support(self, s: int) -> frozenset:
        return frozenset(self.words[s])

    def in_parabolic(self, s: int, P: frozenset) -> bool:
        return self.support(s) <= P

    @_per_instance
    def parabolic_subgroup(self, P: frozenset) -> tuple[int, ...]:
        seen = {0}
        queue = deque([0])
        while queue:
            e = queue.popleft()
            for i in sorted(P):
                f = self.mul(self.simple[i], e)
                if f not in seen:
                    seen.add(f)
                    queue.append(f)
        return tuple(sorted(seen))

    def min_left_coset_rep(self, s: int, P: frozenset) -> int:
        """Minimal element of s·W_P: the one with sα > 0 for α ∈ Δ^P"""
        n = self.rs.n_positive
        changed = True
        while changed:
            changed = False
            for i in sorted(P):
                if self.perms[s][i] >= n:
                    s = self.mul(s, self.simple[i])
                    changed = True
        return s

    def min_right_coset_rep(self, s: int, Q: frozenset) -> int:
        """Minimal element of W_Q·s: the one with s⁻¹α > 0 for α ∈ Δ^Q"""
        return self.inv(self.min_left_coset_rep(self.inv(s), Q))

    def min_coset_rep(self, s: int, P: frozenset, Q: frozenset | None = None) -> int:
        """Minimal representative of s·W_P, or of W_Q·s·W_P when Q is given"""
        if Q is None:
            return self.min_left_coset_rep(s, P)
        while True:
            t = self.min_right_coset_rep(self.min_left_coset_rep(s, P), Q)
            if t == s:
                return s
            s = t

    def double_coset_reps(self, Q: frozenset, P: frozenset) -> list[int]:
        return sorted({self.min_coset_rep(s, P, Q) for s in range(len(self))})

    # -- root subsets ----------------------------------------------------------------

    def standard_root_set(self, S: frozenset) -> frozenset:
        """Φ⁺ ∪ Φ_S as root indices"""
        if S not in self._root_sets:
            rs = self.rs
            levi = {k for k in range(len(rs.roots))
                    if all(c == 0 for i, c in enumerate(rs.simple_coords[k]) if i not in S)}
            self._root_sets[S] = frozenset(range(rs.n_positive)) | frozenset(levi)
        return self._root_sets[S]

    def levi_roots(self, S: frozenset) -> frozenset:
        """Φ_S: roots in the span of Δ^S"""
        base = self.standard_root_set(S)
        return frozenset(k for k in base if self.rs.negative(k) in base)

    # -- semi-standard parabolics ---------------------------------------------------

    def semistandard(self, S: frozenset, u: int = 0) -> SemiStdParabolic:
        S = frozenset(S)
        u = self.min_right_coset_rep(u, S)
        u_inv = self.perms[self.inv(u)]
        roots = frozenset(u_inv[k] for k in self.standard_root_set(S))
        return SemiStdParabolic(S, u, roots)

    def standard(self, S: Iterable[int]) -> SemiStdParabolic:
        return self.semistandard(frozenset(S), 0)

    def contains(self, P: SemiStdParabolic, Q: SemiStdParabolic) -> bool:
        """P ⊆ Q as parabolic subgroups"""
        return P.roots <= Q.roots

    def std_in_frame(self, P: SemiStdParabolic, Q: SemiStdParabolic) -> frozenset:
        """For P ⊆ Q: the standard subset S with u_P·Φ(Q) = Φ⁺ ∪ Φ_S"""
        u_inv = self.perms[self.inv(P.u)]
        return frozenset(i for i in range(self.rs.rank) if u_inv[self.rs.negative(i)] in Q.roots)

    def levi_of(self, P: SemiStdParabolic) -> frozenset:
        return frozenset(k for k in P.roots if self.rs.negative(k) in P.roots)

    def enumerate_semistandard(self) -> list[SemiStdParabolic]:
        seen: dict[SemiStdParabolic, None] = {}
        rank = self.rs.rank
        for mask in range(2 ** rank):
            S = frozenset(i for i in range(rank) if mask >> i & 1)
            for u in range(len(self)):
                seen.setdefault(self.semistandard(S, u))
        return list(seen)

    # -- Weyl sets ----------------------------------------------------------------

    @_per_instance
    def weyl_set_PQ(self, P: frozenset, Q: frozenset) -> tuple[int, ...]:
        """W(𝔞_P, 𝔞_Q): s with s(Δ^P) = Δ^Q"""
        if len(P) != len(Q):
            return ()
        return tuple(s for s in range(len(self))
                     if frozenset(self.perms[s][i] for i in P) == Q)

    @_per_instance
    def weyl_set_PR(self, P: frozenset, R: frozenset) -> tuple[int, ...]:
        """W(𝔞_P, R): s(𝔞_P) ⊃ 𝔞_R and s⁻¹α > 0 for α ∈ Δ^R"""
        levi_r = self.levi_roots(R)
        out = []
        for s in range(len(self)):
            perm = self.perms[s]
            if not all(perm[i] in levi_r for i in P):
                continue
            s_inv = self.perms[self.inv(s)]
            if all(s_inv[j] < self.rs.n_positive for j in R):
                out.append(s)
        return tuple(out)

    @_per_instance
    def weyl_set_M(self, M: frozenset) -> tuple[int, ...]:
        """W(𝔞_M): minimal representatives s of sW^M with s(Δ^M) ⊂ Δ"""
        rank = self.rs.rank
        return tuple(s for s in range(len(self)) if all(self.perms[s][i] < rank for i in M))

    def weyl_levi_group(self, M: frozenset) -> tuple[int, ...]:
        """W(M) realized as the minimal representatives normalizing Δ^M"""
        return tuple(s for s in self.weyl_set_M(M) if frozenset(self.perms[s][i] for i in M) == M)

    def weyl_sets(self, P: frozenset, Q: frozenset | None = None, *, relative: bool = False):
        """Dispatch W(𝔞_P, 𝔞_Q), W(𝔞_P, R) (relative=True) or W(𝔞_M) (Q omitted)"""
        if Q is None:
            return self.weyl_set_M(frozenset(P))
        if relative:
            return self.weyl_set_PR(frozenset(P), frozenset(Q))
        return self.weyl_set_PQ(frozenset(P), frozenset(Q))

    def associated_standard(self, M: frozenset) -> list[frozenset]:
        """Standard Levi subsets associated to M, as s(Δ^M) for s ∈ W(𝔞_M)"""
        return sorted({frozenset(self.perms[s][i] for i in M) for s in self.weyl_set_M(M)},
                      key=lambda S: sorted(S))

    def normalizer(self, M: frozenset) -> tuple[int, ...]:
        """N^W(M): s with s(Φ_M) = Φ_M"""
        levi = self.levi_roots(M)
        return tuple(s for s in range(len(self)) if frozenset(self.perms[s][k] for k in levi) == levi)

    def weyl_levi_homomorphism_holds(self, M: frozenset) -> bool:
        """s ↦ s̄ is a homomorphism N^W(M) → W with kernel W^M and image W(M)"""
        norm = self.normalizer(M)
        bar = {s: self.min_left_coset_rep(s, M) for s in norm}
        for s in norm:
            for t in norm:
                if bar[self.mul(s, t)] != self.mul(bar[s], bar[t]):
                    return False
        kernel = {s for s in norm if bar[s] == 0}
        return kernel == set(self.parabolic_subgroup(M)) and set(bar.values()) == set(self.weyl_levi_group(M))

    # -- facets ---------------------------------------------------------------

    @_per_instance
    def facet_decomposition(self, M: frozenset) -> FacetDecomposition:
        """Q_s, Q^s and ℱ_s(M) for every s ∈ W(𝔞_M)"""
        M = frozenset(M)
        rank = self.rs.rank
        n = self.rs.n_positive
        elements = list(self.weyl_set_M(M))
        lower, upper, intervals = {}, {}, {}
        opposite = None
        for s in elements:
            r_low = frozenset(self.perms[s][i] for i in M)
            s_inv = self.perms[self.inv(s)]
            r_up = frozenset(i for i in range(rank) if s_inv[i] < n)
            lower[s] = self.semistandard(r_low, s)
            upper[s] = self.semistandard(r_up, s)
            free = sorted(r_up - r_low)
            intervals[s] = [
                self.semistandard(r_low | {free[b] for b in range(len(free)) if mask >> b & 1}, s)
                for mask in range(2 ** len(free))
            ]
            if r_low == r_up:
                opposite = s
        return FacetDecomposition(M, elements, lower, upper, intervals, opposite)

    def facets_direct(self, M: frozenset) -> set[SemiStdParabolic]:
        """ℱ(M) enumerated independently of the decomposition: all Q ⊇ Φ_M"""
        levi = self.levi_roots(frozenset(M))
        return {Q for Q in self.enumerate_semistandard() if levi <= Q.roots}

    def levis(self, M: frozenset) -> set[frozenset]:
        """ℒ(M) as Levi root sets"""
        return {self.levi_of(Q) for Q in self.facet_decomposition(frozenset(M)).facets}

    def twist(self, s: int, perm: tuple[int, ...]) -> int:
        """θ₀(s) for a diagram automorphism given by its permutation of Δ"""
        return self.from_word(perm[i] for i in self.words[s])


@lru_cache(maxsize=None)
def generate_weyl(rs: RootSystem, bound: int = WEYL_GROUP_BOUND) -> WeylGroup:
    return WeylGroup(rs, bound)
