"""
Exact convex-hull oracles on 𝔞_M^G: membership by linear feasibility and
volume by recursive pyramid decomposition over the facets
"""
import logging
import math
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ..core.errors import BoundarySampleError
from ..core.lp import feasible_point, open_polyhedron_point
from ..core.rational import Vector, dot, nullspace, sub

logger = logging.getLogger(__name__)


def hull_coordinates(base, v: Vector) -> Vector:
    """Coordinates of the projection of v on the coroot basis of a RelativeBasis"""
    return tuple(dot(w, v) for w in base.delta_hat)


def in_hull(points: Sequence[Vector], y: Vector, *, reject_boundary: bool = False) -> int:
    """
    Decide y ∈ conv(points) exactly.

    :param reject_boundary: raise BoundarySampleError when y lies in the hull but
        admits no representation with every weight strictly positive
    """
    n = len(points)
    d = len(y)
    if d == 0:
        return 1
    A_eq = [[p[k] for p in points] for k in range(d)] + [[Fraction(1)] * n]
    b_eq = list(y) + [Fraction(1)]
    if feasible_point(n, A_eq=A_eq, b_eq=b_eq, nonneg=True) is None:
        return 0
    if reject_boundary:
        unit = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
        strict = [(e, Fraction(0)) for e in unit]
        equal = list(zip((tuple(row) for row in A_eq), b_eq))
        if open_polyhedron_point(n, strict=strict, equal=equal) is None:
            raise BoundarySampleError("point lies on the boundary of the hull")
    return 1


def _hyperplane(points: Sequence[Vector]) -> tuple[Vector, Fraction] | None:
    """Normal n and offset b of the affine hyperplane through d points of ℚ^d"""
    d = len(points[0])
    base = points[0]
    diffs = [sub(p, base) for p in points[1:]]
    if d == 1:
        normal = (Fraction(1),)
    elif d == 2:
        (a, b), = diffs
        normal = (-b, a)
    elif d == 3:
        (a1, a2, a3), (b1, b2, b3) = diffs
        normal = (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)
    else:
        kernel = nullspace(diffs, d)
        if len(kernel) != 1:
            return None
        normal = kernel[0]
    if all(x == 0 for x in normal):
        return None
    return normal, dot(normal, base)


def _facets(points: list[Vector]) -> list[tuple[Vector, Fraction, list[Vector]]]:
    """Facets of a full-dimensional hull as (normal, offset, points on it)"""
    d = len(points[0])
    seen: set[frozenset] = set()
    out = []
    for idx in combinations(range(len(points)), d):
        plane = _hyperplane([points[i] for i in idx])
        if plane is None:
            continue
        normal, b = plane
        above = below = False
        on = []
        for k, p in enumerate(points):
            v = dot(normal, p) - b
            if v > 0:
                above = True
            elif v < 0:
                below = True
            else:
                on.append(k)
            if above and below:
                break
        if above and below:
            continue
        key = frozenset(on)
        if key in seen:
            continue
        seen.add(key)
        out.append((normal, b, [points[k] for k in on]))
    return out


def _scaled(points: Sequence[Vector]) -> tuple[list[Vector], Fraction]:
    """Clear denominators so facet search runs on integers"""
    lcm = math.lcm(*(x.denominator for p in points for x in p))
    return [tuple(Fraction(x * lcm) for x in p) for p in points], Fraction(lcm)


def polytope_volume(points: Sequence[Vector]) -> Fraction:
    """
    Lebesgue volume of conv(points) in its coordinate space.

    Pyramid decomposition from the centroid: vol_d = Σ_F h_F vol_{d−1}(F) / d,
    each facet measured through its projection along a coordinate where the
    normal does not vanish. Returns 0 for a hull that is not full-dimensional.
    """
    unique = list(dict.fromkeys(tuple(p) for p in points))
    if not unique:
        return Fraction(0)
    d = len(unique[0])
    if d == 0:
        return Fraction(1)
    scaled, factor = _scaled(unique)
    return _volume(scaled) / factor ** d


def _volume(points: list[Vector]) -> Fraction:
    d = len(points[0])
    if d == 1:
        values = [p[0] for p in points]
        return max(values) - min(values)
    if len(points) <= d:
        return Fraction(0)
    n = len(points)
    centre = tuple(sum((p[k] for p in points), Fraction(0)) / n for k in range(d))
    total = Fraction(0)
    for normal, b, on in _facets(points):
        height = abs(dot(normal, centre) - b)
        k = next(i for i, x in enumerate(normal) if x != 0)
        projected = list(dict.fromkeys(p[:k] + p[k + 1:] for p in on))
        total += height * _volume(projected) / abs(normal[k])
    return total / d
