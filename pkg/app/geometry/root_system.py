"""
Based root systems with exact rational pairings
"""
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from sympy.liealgebras.cartan_type import CartanType

from ..core.config import MAX_RANK
from ..core.errors import DimensionMismatchError, InvalidRootSystemError, SpecParseError
from ..core.rational import (
    Matrix,
    Vector,
    combine,
    dot,
    inverse,
    mat_vec,
    projector,
    scale,
    sub,
    vec,
)
from ..models.enums import RootType

logger = logging.getLogger(__name__)

_MIN_RANK = {RootType.A: 1, RootType.B: 2, RootType.C: 2, RootType.D: 4, RootType.G: 2}
_SYSTEM_PATTERN = re.compile(r"^\s*([A-Za-z])\s*(\d+)\s*$")


@dataclass(eq=False)
class RootSystem:
    """
    Reduced root system in a fixed rational realization of 𝔞₀.

    Roots are indexed: 0..N-1 are the positive roots ordered by height (simple
    roots first), N+k is the negative of root k.
    """
    root_type: RootType
    rank: int
    dim: int
    simple_roots: tuple[Vector, ...]
    roots: tuple[Vector, ...]
    coroots: tuple[Vector, ...]
    n_positive: int
    gram: Matrix
    cartan: tuple[tuple[int, ...], ...]
    fund_weights: tuple[Vector, ...]
    fund_coweights: tuple[Vector, ...]
    simple_coords: tuple[tuple[int, ...], ...]
    reflection_perms: tuple[tuple[int, ...], ...]
    projector_G: Matrix
    index: dict[Vector, int] = field(repr=False)

    @property
    def label(self) -> str:
        return f"{self.root_type.value}{self.rank}"

    @property
    def simple_coroots(self) -> tuple[Vector, ...]:
        return self.coroots[: self.rank]

    @property
    def positive_roots(self) -> tuple[Vector, ...]:
        return self.roots[: self.n_positive]

    def pair(self, v: Vector, w: Vector) -> Fraction:
        if len(v) != self.dim or len(w) != self.dim:
            raise DimensionMismatchError(f"{self.label} lives in dimension {self.dim}")
        return dot(v, w)

    def is_positive(self, k: int) -> bool:
        return k < self.n_positive

    def negative(self, k: int) -> int:
        return k + self.n_positive if k < self.n_positive else k - self.n_positive

    def height(self, k: int) -> int:
        return sum(self.simple_coords[k])

    def reflect(self, i: int, v: Vector) -> Vector:
        return sub(v, scale(dot(v, self.coroots[i]), self.simple_roots[i]))

    def project_G(self, v: Vector) -> Vector:
        """Component of v in 𝔞₀^G (the span of the roots)"""
        return mat_vec(self.projector_G, v)

    def alpha_values(self, H: Vector) -> tuple[Fraction, ...]:
        return tuple(dot(a, H) for a in self.simple_roots)

    def from_alpha_values(self, values) -> Vector:
        """The H ∈ 𝔞₀^G with α_i(H) = values[i], i.e. Σ values[i] ϖ_i^∨"""
        return combine([Fraction(x) for x in values], self.fund_coweights, self.dim)

    def from_simple_coords(self, coords) -> Vector:
        return combine([Fraction(x) for x in coords], self.simple_roots, self.dim)


def coroot_of(v: Vector) -> Vector:
    return scale(Fraction(2) / dot(v, v), v)


def _realization(root_type: RootType, rank: int) -> list[Vector]:
    cartan_type = CartanType(f"{root_type.value}{rank}")
    return [vec(cartan_type.simple_root(i)) for i in range(1, rank + 1)]


def validate_type(root_type: RootType | str, rank: int) -> RootType:
    try:
        if not isinstance(root_type, RootType):
            root_type = RootType(str(root_type).upper())
    except ValueError:
        raise InvalidRootSystemError(f"unsupported type {root_type!r}")
    if root_type == RootType.G:
        if rank != 2:
            raise InvalidRootSystemError("type G exists only in rank 2")
    elif not _MIN_RANK[root_type] <= rank <= MAX_RANK:
        raise InvalidRootSystemError(
            f"rank of type {root_type.value} must lie in [{_MIN_RANK[root_type]}, {MAX_RANK}]"
        )
    return root_type


@lru_cache(maxsize=None)
def build_root_system(root_type: RootType | str, rank: int) -> RootSystem:
    """Construct the based root system of the given type by reflection closure"""
    root_type = validate_type(root_type, rank)
    simple = _realization(root_type, rank)
    dim = len(simple[0])
    simple_coroots = [coroot_of(a) for a in simple]

    def reflect(i, v):
        return sub(v, scale(dot(v, simple_coroots[i]), simple[i]))

    found = {v: None for v in simple}
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rank):
                w = reflect(i, v)
                if w not in found:
                    found[w] = None
                    nxt.append(w)
        frontier = nxt

    gram = tuple(tuple(dot(a, b) for b in simple) for a in simple)
    gram_inv = inverse(gram)
    fund_coweights = tuple(combine(gram_inv[i], simple, dim) for i in range(rank))

    def coords(v):
        return tuple(dot(w, v) for w in fund_coweights)

    positives = []
    for v in found:
        c = coords(v)
        if any(x.denominator != 1 for x in c):
            raise InvalidRootSystemError("root is not an integral combination of simple roots")
        if all(x >= 0 for x in c):
            positives.append((v, tuple(int(x) for x in c)))
    positives.sort(key=lambda item: (sum(item[1]), tuple(-x for x in item[1])))
    n_pos = len(positives)
    roots = tuple(v for v, _ in positives) + tuple(scale(-1, v) for v, _ in positives)
    simple_coords = tuple(c for _, c in positives) + tuple(tuple(-x for x in c) for _, c in positives)
    index = {v: k for k, v in enumerate(roots)}
    coroots = tuple(coroot_of(v) for v in roots)
    cartan = tuple(tuple(int(dot(a, c)) for c in simple_coroots) for a in simple)
    fund_weights = tuple(scale(gram[i][i] / 2, fund_coweights[i]) for i in range(rank))
    perms = tuple(tuple(index[reflect(i, v)] for v in roots) for i in range(rank))

    rs = RootSystem(
        root_type=root_type,
        rank=rank,
        dim=dim,
        simple_roots=tuple(simple),
        roots=roots,
        coroots=coroots,
        n_positive=n_pos,
        gram=gram,
        cartan=cartan,
        fund_weights=fund_weights,
        fund_coweights=fund_coweights,
        simple_coords=simple_coords,
        reflection_perms=perms,
        projector_G=projector(tuple(simple), dim),
        index=index,
    )
    logger.debug("built %s with %d positive roots", rs.label, n_pos)
    return rs


def parse_system_spec(text: str) -> tuple[RootType, int]:
    """Parse "A3", "D4", "G2" (case-insensitive)"""
    match = _SYSTEM_PATTERN.match(text or "")
    if not match:
        raise SpecParseError(f"malformed root system spec {text!r}")
    return validate_type(match.group(1), int(match.group(2))), int(match.group(2))


def system_from_spec(text: str) -> RootSystem:
    return build_root_system(*parse_system_spec(text))


def check_invariants(rs: RootSystem) -> list[str]:
    """Return the list of violated structural invariants (empty when sound)"""
    problems = []
    for k, a in enumerate(rs.roots):
        for c in rs.coroots:
            if dot(a, c).denominator != 1:
                problems.append(f"non-integral pairing at root {k}")
                break
        if scale(Fraction(1, 2), a) in rs.index:
            problems.append(f"root {k} is not reduced")
    for i in range(rs.rank):
        for j in range(rs.rank):
            expected = Fraction(int(i == j))
            if dot(rs.fund_weights[i], rs.coroots[j]) != expected:
                problems.append(f"weight {i} not dual to coroot {j}")
            if i != j and rs.gram[i][j] > 0:
                problems.append(f"simple roots {i},{j} not obtuse")
        if sorted(rs.reflection_perms[i]) != list(range(len(rs.roots))):
            problems.append(f"reflection {i} does not permute the roots")
    for k in range(rs.n_positive):
        if any(c < 0 for c in rs.simple_coords[k]):
            problems.append(f"positive root {k} has a negative simple coordinate")
    return problems
