"""
Exact two-phase simplex over Fractions (Bland's rule) and the cone feasibility
questions built on it
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ..models.enums import LPStatus
from .rational import Vector, combine, dot, nullspace, rank, to_fraction, to_sympy

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    x: Vector | None = None
    value: Fraction | None = None


@dataclass(frozen=True)
class ConeKernelResult:
    """Outcome of deciding whether a closed cone meets a subspace only in 0.

    When trivial, ``multipliers`` holds a strictly positive λ with Bᵀλ = 0,
    B being the cone rows restricted to the subspace basis. Otherwise
    ``witness`` is a nonzero ambient vector in the intersection.
    """
    trivial: bool
    multipliers: Vector | None = None
    witness: Vector | None = None


def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    pivot_row = tableau[row]
    p = pivot_row[col]
    if p != 1:
        tableau[row] = pivot_row = [x / p for x in pivot_row]
    for i, other in enumerate(tableau):
        if i != row and other[col] != 0:
            f = other[col]
            tableau[i] = [a - f * b for a, b in zip(other, pivot_row)]
    basis[row] = col


def _run_simplex(tableau, basis, cost, allowed) -> bool:
    """Minimize cost over the current basic feasible tableau. False if unbounded."""
    while True:
        entering = None
        for j in allowed:
            if j in basis:
                continue
            r = cost[j] - sum((cost[basis[i]] * tableau[i][j] for i in range(len(basis))), ZERO)
            if r < 0:
                entering = j
                break
        if entering is None:
            return True
        best_row, best_ratio = None, None
        for i, row in enumerate(tableau):
            a = row[entering]
            if a > 0:
                ratio = row[-1] / a
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[best_row])):
                    best_row, best_ratio = i, ratio
        if best_row is None:
            return False
        _pivot(tableau, basis, best_row, entering)


def linprog_exact(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    *,
    maximize: bool = False,
    nonneg: bool = False,
) -> LPResult:
    """
    Solve min (or max) c·x subject to A_ub x ≤ b_ub, A_eq x = b_eq

    :param nonneg: restrict x ≥ 0; otherwise variables are free
    :return: LPResult with exact optimum, or INFEASIBLE / UNBOUNDED
    """
    n = len(c)
    width = n if nonneg else 2 * n

    def expand(row):
        row = [Fraction(x) for x in row]
        return row if nonneg else row + [-x for x in row]

    rows, rhs = [], []
    n_ub = len(A_ub)
    for k, (a, b) in enumerate(zip(A_ub, b_ub)):
        slack = [ZERO] * n_ub
        slack[k] = ONE
        rows.append(expand(a) + slack)
        rhs.append(Fraction(b))
    for a, b in zip(A_eq, b_eq):
        rows.append(expand(a) + [ZERO] * n_ub)
        rhs.append(Fraction(b))
    m = len(rows)
    n_struct = width + n_ub
    tableau = []
    for i, (row, b) in enumerate(zip(rows, rhs)):
        if b < 0:
            row, b = [-x for x in row], -b
        art = [ZERO] * m
        art[i] = ONE
        tableau.append(row + art + [b])
    basis = list(range(n_struct, n_struct + m))

    phase1_cost = [ZERO] * n_struct + [ONE] * m
    _run_simplex(tableau, basis, phase1_cost, range(n_struct + m))
    if sum((tableau[i][-1] for i, j in enumerate(basis) if j >= n_struct), ZERO) > 0:
        return LPResult(LPStatus.INFEASIBLE)

    # Expulsar artificiais da base; linhas sem pivô são redundantes
    i = 0
    while i < len(tableau):
        if basis[i] >= n_struct:
            col = next((j for j in range(n_struct) if tableau[i][j] != 0), None)
            if col is None:
                del tableau[i]
                del basis[i]
                continue
            _pivot(tableau, basis, i, col)
        i += 1

    sign = -1 if maximize else 1
    cost = [sign * Fraction(x) for x in c]
    cost = (cost if nonneg else cost + [-x for x in cost]) + [ZERO] * (n_ub + m)
    if not _run_simplex(tableau, basis, cost, range(n_struct)):
        return LPResult(LPStatus.UNBOUNDED)

    z = [ZERO] * n_struct
    for i, j in enumerate(basis):
        z[j] = tableau[i][-1]
    x = tuple(z[:n]) if nonneg else tuple(z[k] - z[n + k] for k in range(n))
    return LPResult(LPStatus.OPTIMAL, x, dot(tuple(Fraction(v) for v in c), x))


def feasible_point(
    n: int,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    nonneg: bool = False,
) -> Vector | None:
    result = linprog_exact([0] * n, A_ub, b_ub, A_eq, b_eq, nonneg=nonneg)
    return result.x if result.status == LPStatus.OPTIMAL else None


def open_polyhedron_point(
    n: int,
    strict: Sequence[tuple[Vector, Fraction]] = (),
    weak: Sequence[tuple[Vector, Fraction]] = (),
    equal: Sequence[tuple[Vector, Fraction]] = (),
) -> Vector | None:
    """
    Find x with a·x > b (strict), a·x ≥ b (weak) and a·x = b (equal)

    :return: a point, or None when the set is empty
    """
    if not strict:
        return feasible_point(
            n,
            [[-x for x in a] for a, _ in weak], [-b for _, b in weak],
            [a for a, _ in equal], [b for _, b in equal],
        )
    A_ub, b_ub = [], []
    for a, b in strict:
        A_ub.append([-x for x in a] + [ONE])
        b_ub.append(-Fraction(b))
    for a, b in weak:
        A_ub.append([-x for x in a] + [ZERO])
        b_ub.append(-Fraction(b))
    A_ub.append([ZERO] * n + [ONE])
    b_ub.append(ONE)
    A_eq = [list(a) + [ZERO] for a, _ in equal]
    b_eq = [b for _, b in equal]
    result = linprog_exact([0] * n + [1], A_ub, b_ub, A_eq, b_eq, maximize=True)
    if result.status != LPStatus.OPTIMAL or result.value <= 0:
        return None
    return result.x[:n]


def cone_meets_subspace_trivially(
    rows: Sequence[Vector], basis: Sequence[Vector], dim: int
) -> ConeKernelResult:
    """
    Decide {x : r·x ≥ 0 for r in rows} ∩ span(basis) = {0}

    With B = [r·v_j], the intersection is trivial iff B has full column rank and
    some λ > 0 satisfies Bᵀλ = 0.
    """
    basis = list(basis)
    k = len(basis)
    if k == 0:
        return ConeKernelResult(True, multipliers=())
    if not rows:
        return ConeKernelResult(False, witness=basis[0])
    B = [[dot(r, v) for v in basis] for r in rows]
    if rank(B, k) < k:
        y = nullspace(B, k)[0]
        return ConeKernelResult(False, witness=combine(y, basis, dim))
    m = len(B)
    columns = [[B[i][j] for i in range(m)] for j in range(k)]
    # λ = 1 + μ, μ ≥ 0
    rhs = [-sum(col, ZERO) for col in columns]
    mu = feasible_point(m, A_eq=columns, b_eq=rhs, nonneg=True)
    if mu is not None:
        return ConeKernelResult(True, multipliers=tuple(ONE + x for x in mu))
    A_ub = [[-x for x in row] for row in B]
    A_ub.append([-sum((B[i][j] for i in range(m)), ZERO) for j in range(k)])
    y = feasible_point(k, A_ub, [ZERO] * m + [-ONE])
    return ConeKernelResult(False, witness=combine(y, basis, dim))


def replay_cone_certificate(
    rows: Sequence[Vector], basis: Sequence[Vector], multipliers: Sequence[Fraction]
) -> bool:
    """Check a triviality certificate without solving anything"""
    k = len(basis)
    if k == 0:
        return True
    B = [[dot(r, v) for v in basis] for r in rows]
    if len(multipliers) != len(B) or any(x <= 0 for x in multipliers):
        return False
    if rank(B, k) < k:
        return False
    return all(sum((lam * B[i][j] for i, lam in enumerate(multipliers)), ZERO) == 0 for j in range(k))


def enumerate_vertices(A: Sequence[Vector], b: Sequence[Fraction], n: int) -> list[Vector]:
    """Vertices of {x ∈ ℚⁿ : Ax ≤ b} by exhaustive n-row intersection"""
    found: dict[Vector, None] = {}
    if n == 0:
        return [()] if all(Fraction(v) >= 0 for v in b) else []
    for idx in combinations(range(len(A)), n):
        sub_a = [A[i] for i in idx]
        mat = to_sympy(sub_a)
        if mat.det() == 0:
            continue
        x = tuple(to_fraction(v) for v in mat.LUsolve(to_sympy([[b[i] for i in idx]]).T))
        if all(dot(a, x) <= bi for a, bi in zip(A, b)):
            found.setdefault(x)
    return list(found)


def polyhedron_is_bounded(A: Sequence[Vector], n: int) -> ConeKernelResult:
    """{Ax ≤ b} is bounded (when nonempty) iff its recession cone {Ax ≤ 0} is {0}"""
    identity = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    return cone_meets_subspace_trivially([tuple(-x for x in a) for a in A], identity, n)


__all__ = [
    "LPResult",
    "ConeKernelResult",
    "linprog_exact",
    "feasible_point",
    "open_polyhedron_point",
    "cone_meets_subspace_trivially",
    "replay_cone_certificate",
    "enumerate_vertices",
    "polyhedron_is_bounded",
]
