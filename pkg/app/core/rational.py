"""
Exact rational vectors and the sympy-backed linear algebra used everywhere
"""
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import sympy as sp

from .errors import DimensionMismatchError, SpecParseError

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

_RAT_PATTERN = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rat(text: str | int) -> Fraction:
    """Parse "p/q" or "p" into a reduced Fraction"""
    if isinstance(text, int):
        return Fraction(text)
    match = _RAT_PATTERN.match(str(text))
    if not match:
        raise SpecParseError(f"not a rational literal: {text!r}")
    num, den = match.group(1), match.group(2)
    if den is not None and int(den) == 0:
        raise SpecParseError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rat(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def vec(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def zero(dim: int) -> Vector:
    return (Fraction(0),) * dim


def _check(u: Sequence, v: Sequence) -> None:
    if len(u) != len(v):
        raise DimensionMismatchError(f"dimensions {len(u)} and {len(v)} differ")


def dot(u: Vector, v: Vector) -> Fraction:
    _check(u, v)
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Vector, v: Vector) -> Vector:
    _check(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    _check(u, v)
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Vector) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in v)


def neg(v: Vector) -> Vector:
    return tuple(-a for a in v)


def combine(coeffs: Sequence, vectors: Sequence[Vector], dim: int) -> Vector:
    """Return sum of coeffs[i] * vectors[i]"""
    out = [Fraction(0)] * dim
    for c, v in zip(coeffs, vectors):
        if c:
            for k, x in enumerate(v):
                out[k] += c * x
    return tuple(out)


def is_zero(v: Vector) -> bool:
    return all(x == 0 for x in v)


def norm2(v: Vector) -> Fraction:
    return dot(v, v)


def to_fraction(x) -> Fraction:
    x = sp.Rational(x)
    return Fraction(int(x.p), int(x.q))


def to_sympy(rows: Sequence[Sequence], ncols: int | None = None) -> sp.Matrix:
    if not rows:
        return sp.zeros(0, ncols or 0)
    return sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in map(Fraction, row)] for row in rows])


def from_sympy(mat: sp.Matrix) -> Matrix:
    return tuple(tuple(to_fraction(mat[i, j]) for j in range(mat.cols)) for i in range(mat.rows))


def mat_vec(mat: Matrix, v: Vector) -> Vector:
    return tuple(dot(row, v) for row in mat)


def transpose(mat: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in col) for col in zip(*mat))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def inverse(mat: Sequence[Sequence]) -> Matrix:
    return from_sympy(to_sympy(mat).inv())


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    if not rows:
        return 0
    return to_sympy(rows, ncols).rank()


def determinant(mat: Sequence[Sequence]) -> Fraction:
    if not mat:
        return Fraction(1)
    return to_fraction(to_sympy(mat).det())


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {x : row·x = 0 for every row}"""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    return [tuple(to_fraction(x) for x in col) for col in to_sympy(rows).nullspace()]


def solve_coordinates(basis: Sequence[Vector], v: Vector) -> Vector | None:
    """Coordinates of v in a linearly independent basis, or None if v is outside its span"""
    if not basis:
        return () if is_zero(v) else None
    mat = to_sympy(basis).T
    try:
        sol, params = mat.gauss_jordan_solve(to_sympy([v]).T)
    except ValueError:
        return None
    if params.shape[0]:
        sol = sol.subs({p: 0 for p in params})
    return tuple(to_fraction(x) for x in sol)


@lru_cache(maxsize=None)
def projector(basis: tuple[Vector, ...], dim: int) -> Matrix:
    """Orthogonal projector onto span(basis): Bᵀ(BBᵀ)⁻¹B on independent rows"""
    if not basis:
        return tuple(zero(dim) for _ in range(dim))
    b = to_sympy(basis)
    independent = [basis[i] for i in b.T.rref()[1]]
    b = to_sympy(independent)
    return from_sympy(b.T * (b * b.T).inv() * b)


def identity(dim: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(sub(r, s) for r, s in zip(a, b))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(add(r, s) for r, s in zip(a, b))


def mat_scale(c, a: Matrix) -> Matrix:
    return tuple(scale(c, r) for r in a)
