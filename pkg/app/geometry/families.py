"""
Orthogonal families s ↦ X_s, their wall coefficients b_γ(s, t) and the
path decomposition of X_t − X_s along a reduced word
"""
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ..core.errors import FamilyFormatError, OrthogonalityError, SpecParseError
from ..core.rational import Vector, add, dot, is_zero, parse_rat, scale, sub
from ..core.sampling import RationalSampler
from .parabolic import parse_parabolic
from .weyl import SemiStdParabolic, WeylGroup

logger = logging.getLogger(__name__)


@dataclass
class FamilyValidation:
    regular: bool
    coefficients: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    @property
    def min_coefficient(self) -> Fraction | None:
        return min(self.coefficients.values()) if self.coefficients else None


@dataclass(eq=False)
class OrthogonalFamily:
    """X_s for every s ∈ W; X_P for P ∈ 𝒫(M₀) is the value at the element labelling P"""
    W: WeylGroup
    values: tuple[Vector, ...]

    def value(self, s: int) -> Vector:
        return self.values[s]

    def at(self, ctx, P: SemiStdParabolic) -> Vector:
        """X_P: projection of X_{u_P} onto 𝔞_P (the chamber s⁻¹P₀ = u_P⁻¹P₀ lies in P)"""
        return ctx.project(P, self.values[P.u])

    def shifted(self, v: Vector) -> "OrthogonalFamily":
        return OrthogonalFamily(self.W, tuple(add(x, v) for x in self.values))

    def scaled(self, c) -> "OrthogonalFamily":
        return OrthogonalFamily(self.W, tuple(scale(c, x) for x in self.values))

    def plus(self, other: "OrthogonalFamily") -> "OrthogonalFamily":
        return OrthogonalFamily(self.W, tuple(add(x, y) for x, y in zip(self.values, other.values)))


@dataclass(eq=False)
class LeviFamily:
    """M-orthogonal family: one point X_P ∈ 𝔞_M^G per chamber P ∈ 𝒫(M)"""
    levi: frozenset
    points: dict[SemiStdParabolic, Vector]

    def at(self, ctx, Q: SemiStdParabolic) -> Vector:
        """X_Q for Q ∈ ℱ(M): projection on 𝔞_Q of X_P for any chamber P ⊆ Q"""
        if Q in self.points:
            return self.points[Q]
        for P, X in self.points.items():
            if ctx.contains(P, Q):
                return ctx.project(Q, X)
        raise FamilyFormatError(f"no chamber of the family lies in {Q}")


def validate_levi_family(ctx, fam: LeviFamily) -> None:
    """
    :raises OrthogonalityError: when two chambers in a common facet disagree
        on its 𝔞_Q component
    """
    for Q in ctx.facets(fam.levi):
        projections = {ctx.project(Q, X) for P, X in fam.points.items() if ctx.contains(P, Q)}
        if len(projections) > 1:
            logger.warning("family breaks orthogonality at %s", Q)
            raise OrthogonalityError(f"chambers below {Q} project to {len(projections)} different points")


def family_from_T(W: WeylGroup, T: Vector, T0: Vector | None = None) -> OrthogonalFamily:
    """s ↦ s⁻¹T + T₀ − s⁻¹T₀"""
    if T0 is None:
        T0 = tuple(Fraction(0) for _ in T)
    values = []
    for s in range(len(W)):
        s_inv = W.inv(s)
        values.append(add(sub(W.act(s_inv, T), W.act(s_inv, T0)), T0))
    return OrthogonalFamily(W, tuple(values))


def constant_family(W: WeylGroup, X: Vector) -> OrthogonalFamily:
    return OrthogonalFamily(W, tuple(X for _ in range(len(W))))


def random_regular_family(W: WeylGroup, sampler: RationalSampler) -> OrthogonalFamily:
    """family_from_T with T₀ random and T − T₀ regular"""
    T0 = sampler.alpha_point(W.rs)
    return family_from_T(W, add(T0, sampler.regular_point(W.rs)), T0)


def random_family(ctx, sampler: RationalSampler, regular: bool = True) -> OrthogonalFamily:
    """family_from_T with T, T₀ drawn in the frame's fixed subspace; T − T₀ regular on request"""
    rs = ctx.rs
    T0 = ctx.fixed(sampler.alpha_point(rs))
    step = sampler.regular_point(rs) if regular else sampler.alpha_point(rs)
    return family_from_T(ctx.W, add(T0, ctx.fixed(step)), T0)


def _edges(W: WeylGroup):
    """(s, t, γ) with s = s_α t, ℓ(s) = ℓ(t) + 1 and γ = t⁻¹α as root index"""
    n = W.rs.n_positive
    for t in range(len(W)):
        t_inv = W.perms[W.inv(t)]
        for i, refl in enumerate(W.simple):
            gamma = t_inv[i]
            if gamma < n:
                yield W.mul(refl, t), t, gamma


def validate_orthogonal_family(fam: OrthogonalFamily) -> FamilyValidation:
    """
    Compute b_γ(s, t) for every covering pair and flag regularity.

    :raises OrthogonalityError: when X_t − X_s is not on the wall coroot
    """
    W = fam.W
    rs = W.rs
    coefficients: dict[tuple[int, int], Fraction] = {}
    for s, t, gamma in _edges(W):
        diff = sub(fam.values[t], fam.values[s])
        b = dot(diff, rs.roots[gamma]) / 2
        if not is_zero(sub(diff, scale(b, rs.coroots[gamma]))):
            logger.warning("family breaks orthogonality between %s and %s", W.word(t), W.word(s))
            raise OrthogonalityError(
                f"X_t − X_s not proportional to the coroot for t={list(W.word(t))}, s={list(W.word(s))}"
            )
        coefficients[(s, t)] = b
    regular = all(b > 0 for b in coefficients.values())
    return FamilyValidation(regular=regular, coefficients=coefficients)


def path_decomposition(fam: OrthogonalFamily, s: int, t: int) -> dict[int, Fraction]:
    """
    Walk from t to s along a reduced word of st⁻¹.

    Returns {β: b_β} over the roots met, so X_t − X_s = Σ b_β β^∨.
    """
    W = fam.W
    rs = W.rs
    v = W.mul(s, W.inv(t))
    out: dict[int, Fraction] = {}
    current = t
    for i in reversed(W.word(v)):
        nxt = W.mul(W.simple[i], current)
        beta = W.perms[W.inv(current)][i]
        diff = sub(fam.values[current], fam.values[nxt])
        b = dot(diff, rs.roots[beta]) / 2
        if not is_zero(sub(diff, scale(b, rs.coroots[beta]))):
            raise OrthogonalityError(f"edge {list(W.word(current))} → {list(W.word(nxt))} is not orthogonal")
        out[beta] = b
        current = nxt
    return out


def perturbed(fam: OrthogonalFamily, s: int, v: Vector) -> OrthogonalFamily:
    values = list(fam.values)
    values[s] = add(values[s], v)
    return OrthogonalFamily(fam.W, tuple(values))


# -- JSON family files --------------------------------------------------------------

def _vector(raw: Any, dim: int) -> Vector:
    if not isinstance(raw, list) or len(raw) != dim:
        raise FamilyFormatError(f"expected a list of {dim} rationals, got {raw!r}")
    try:
        return tuple(parse_rat(x) for x in raw)
    except SpecParseError as exc:
        raise FamilyFormatError(str(exc))


def family_from_mapping(W: WeylGroup, data: dict) -> OrthogonalFamily:
    """
    Build a family from {"values": {key: [p/q, ...]}} (or the bare mapping).

    Keys are reduced words such as "[0, 1]" / "0,1" / "" for the identity, or
    chamber subsets prefixed with "P:" naming u⁻¹P₀ by the word of u. The
    shorthand {"T": [...], "T0": [...]} builds family_from_T.
    """
    rs = W.rs
    if not isinstance(data, dict):
        raise FamilyFormatError("family document must be a JSON object")
    if "T" in data:
        T = _vector(data["T"], rs.dim)
        T0 = _vector(data["T0"], rs.dim) if "T0" in data else None
        return family_from_T(W, T, T0)
    raw = data.get("values", data)
    values: dict[int, Vector] = {}
    for key, coords in raw.items():
        text = str(key).strip()
        if text.startswith("P:"):
            text = text[2:]
        text = text.strip("[]() ")
        try:
            word = [int(x) for x in text.split(",") if x.strip()]
        except ValueError:
            raise FamilyFormatError(f"malformed element key {key!r}")
        if any(not 0 <= i < rs.rank for i in word):
            raise FamilyFormatError(f"element key {key!r} out of range")
        values[W.from_word(word)] = _vector(coords, rs.dim)
    missing = len(W) - len(values)
    if missing:
        raise FamilyFormatError(f"family leaves {missing} Weyl elements without a value")
    return OrthogonalFamily(W, tuple(values[s] for s in range(len(W))))


def load_family(W: WeylGroup, path: str) -> OrthogonalFamily:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FamilyFormatError(f"cannot read family file {path}: {exc}")
    return family_from_mapping(W, data)


def parse_levi(text: str | None, rank: int) -> frozenset:
    return parse_parabolic(text or "", rank)
