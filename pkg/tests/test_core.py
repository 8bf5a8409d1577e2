"""
Unit tests for exact rational helpers, samplers and the exact LP
"""
import pytest
from fractions import Fraction
from hypothesis import given, settings

from app.core.errors import BoundarySampleError, DimensionMismatchError, SpecParseError
from app.core.lp import (
    cone_meets_subspace_trivially,
    enumerate_vertices,
    feasible_point,
    linprog_exact,
    open_polyhedron_point,
    polyhedron_is_bounded,
    replay_cone_certificate,
)
from app.core.rational import (
    add,
    dot,
    format_rat,
    mat_vec,
    nullspace,
    parse_rat,
    projector,
    solve_coordinates,
    sub,
    vec,
)
from app.core.sampling import RationalSampler, SampleTally, jsonable, run_samples
from app.models.enums import LPStatus
from tests.strategies import rational_vectors

pytestmark = pytest.mark.unit

F = Fraction


class TestRationalLiterals:
    """Test cases for p/q parsing and formatting"""

    def test_parse_reduces(self):
        """Test that "3/6" parses to 1/2"""
        assert parse_rat("3/6") == F(1, 2)

    def test_parse_integer_and_spaces(self):
        """Test integers and spaces around the slash"""
        assert parse_rat("-4") == -4
        assert parse_rat(" 1 / 3 ") == F(1, 3)
        assert parse_rat(7) == 7

    @pytest.mark.parametrize("text", ["1/0", "1.5", "a/b", "", "1//2"])
    def test_parse_rejects_malformed(self, text):
        """Test that malformed literals raise SpecParseError"""
        with pytest.raises(SpecParseError):
            parse_rat(text)

    def test_format(self):
        """Test "p/q" output with integers left bare"""
        assert format_rat(F(6, 4)) == "3/2"
        assert format_rat(F(-2)) == "-2"
        assert format_rat(0) == "0"


class TestVectors:
    """Test cases for exact vector and matrix helpers"""

    def test_dimension_mismatch(self):
        """Test that combining vectors of different length fails"""
        with pytest.raises(DimensionMismatchError):
            dot(vec([1, 2]), vec([1, 2, 3]))

    def test_solve_coordinates_in_span(self):
        """Test coordinates of a vector inside the span"""
        basis = [vec([1, 0, 0]), vec([1, 1, 0])]
        assert solve_coordinates(basis, vec([3, 2, 0])) == (F(1), F(2))

    def test_solve_coordinates_outside_span(self):
        """Test that a vector outside the span returns None"""
        basis = [vec([1, 0, 0]), vec([0, 1, 0])]
        assert solve_coordinates(basis, vec([0, 0, 1])) is None

    def test_projector_onto_line(self):
        """Test the orthogonal projector onto span{(1, 1)}"""
        P = projector((vec([1, 1]),), 2)
        assert P == ((F(1, 2), F(1, 2)), (F(1, 2), F(1, 2)))
        assert mat_vec(P, vec([2, 0])) == (F(1), F(1))

    def test_nullspace_orthogonal(self):
        """Test that the nullspace is orthogonal to every row"""
        rows = [vec([1, 1, 0]), vec([0, 1, 1])]
        basis = nullspace(rows, 3)
        assert len(basis) == 1
        assert all(dot(r, basis[0]) == 0 for r in rows)

    @given(rational_vectors(3), rational_vectors(3))
    def test_add_sub_inverse(self, u, v):
        """Test that subtracting undoes adding"""
        assert sub(add(u, v), v) == u

    @settings(max_examples=30)
    @given(rational_vectors(3))
    def test_projector_is_idempotent(self, v):
        """Test P(Pv) = Pv for the projector onto a plane"""
        P = projector((vec([1, -1, 0]), vec([0, 1, -1])), 3)
        once = mat_vec(P, v)
        assert mat_vec(P, once) == once
        assert sum(once) == 0


class TestSampler:
    """Test cases for the seeded p/q sampler"""

    def test_same_seed_same_draws(self):
        """Test determinism under a fixed seed"""
        first = RationalSampler(42)
        second = RationalSampler(42)
        assert [first.rat() for _ in range(20)] == [second.rat() for _ in range(20)]

    def test_draw_ranges(self):
        """Test the sign and range of each draw kind"""
        sampler = RationalSampler(3, bound=5)
        for _ in range(200):
            assert sampler.positive() > 0
            assert sampler.nonpositive() <= 0
            assert 0 < sampler.unit() <= 1
            assert sampler.nonzero() != 0
            x = sampler.rat()
            assert abs(x.numerator) <= 5 * x.denominator

    def test_fork_is_deterministic(self):
        """Test that forks of equal samplers draw equal values"""
        a = RationalSampler(9).fork()
        b = RationalSampler(9).fork()
        assert a.rats(5) == b.rats(5)


class TestSampleTally:
    """Test cases for the per-check tally"""

    def test_failure_records_witness(self):
        """Test that witnesses are rendered with "p/q" rationals"""
        tally = SampleTally()
        tally.record(True)
        tally.record(False, H=(F(1, 2), F(-3)), P=frozenset({2, 0}))
        assert tally.checked == 2
        assert tally.failed == 1
        assert not tally.passed
        assert tally.witnesses == [{"H": ["1/2", "-3"], "P": [0, 2]}]

    def test_witness_cap(self):
        """Test that at most max_witnesses are kept"""
        tally = SampleTally()
        for k in range(10):
            tally.record(False, k=k)
        assert tally.failed == 10
        assert len(tally.witnesses) == tally.max_witnesses

    def test_merge_keeps_largest_ratio(self):
        """Test that merging takes the maximum of Fraction notes"""
        first = SampleTally(checked=2, notes={"ratio": F(3, 2)})
        second = SampleTally(checked=1, skipped_boundary=4, notes={"ratio": F(5, 2), "other": 1})
        first.merge(second)
        assert first.checked == 3
        assert first.skipped_boundary == 4
        assert first.notes == {"ratio": F(5, 2), "other": 1}

    def test_run_samples_redraws_boundary(self):
        """Test that a boundary sample is redrawn and counted as skipped"""
        calls = {"n": 0}

        def check(sampler, tally):
            calls["n"] += 1
            if calls["n"] % 2:
                raise BoundarySampleError("on a wall")
            tally.record(True)

        tally = run_samples(check, 4, RationalSampler(1))
        assert tally.checked == 4
        assert tally.skipped_boundary == 4
        assert tally.passed

    def test_jsonable_nested(self):
        """Test rendering of nested sets and dicts"""
        assert jsonable({"b": [F(1, 3)], "a": {frozenset({3, 1})}}) == {"a": [[1, 3]], "b": ["1/3"]}


class TestExactLP:
    """Test cases for the exact simplex and cone certificates"""

    def test_minimum(self):
        """Test min x + y subject to x + y >= 1, x, y >= 0"""
        result = linprog_exact([1, 1], A_ub=[[-1, -1]], b_ub=[-1], nonneg=True)
        assert result.status == LPStatus.OPTIMAL
        assert result.value == 1

    def test_infeasible(self):
        """Test x <= -1 with x >= 0"""
        result = linprog_exact([1], A_ub=[[1]], b_ub=[-1], nonneg=True)
        assert result.status == LPStatus.INFEASIBLE

    def test_unbounded(self):
        """Test max x with x >= 0 only"""
        result = linprog_exact([1], maximize=True, nonneg=True)
        assert result.status == LPStatus.UNBOUNDED

    def test_free_variables_equality(self):
        """Test an equality system over free variables"""
        x = feasible_point(2, A_eq=[[1, 1], [1, -1]], b_eq=[3, -1])
        assert x == (F(1), F(2))

    def test_open_polyhedron(self):
        """Test strict inequalities: x > 0, y > 0, x + y < 1 is nonempty; x > 0, x < 0 is empty"""
        point = open_polyhedron_point(2, strict=[(vec([1, 0]), F(0)), (vec([0, 1]), F(0)), (vec([-1, -1]), F(-1))])
        assert point is not None
        assert point[0] > 0 and point[1] > 0 and point[0] + point[1] < 1
        assert open_polyhedron_point(1, strict=[(vec([1]), F(0)), (vec([-1]), F(0))]) is None

    def test_cone_meets_subspace_trivially(self):
        """Test the orthant against a line through its interior and against the antidiagonal"""
        orthant = [vec([1, 0]), vec([0, 1])]
        inside = cone_meets_subspace_trivially(orthant, [vec([1, 1])], 2)
        assert not inside.trivial
        assert all(dot(r, inside.witness) >= 0 for r in orthant)
        outside = cone_meets_subspace_trivially(orthant, [vec([1, -1])], 2)
        assert outside.trivial
        assert replay_cone_certificate(orthant, [vec([1, -1])], outside.multipliers)

    def test_replay_rejects_bad_multipliers(self):
        """Test that a certificate with a zero multiplier is refused"""
        orthant = [vec([1, 0]), vec([0, 1])]
        assert not replay_cone_certificate(orthant, [vec([1, -1])], (F(1), F(0)))

    def test_vertices_and_boundedness(self):
        """Test the unit square: four vertices, bounded"""
        A = [vec([1, 0]), vec([-1, 0]), vec([0, 1]), vec([0, -1])]
        b = [F(1), F(0), F(1), F(0)]
        assert set(enumerate_vertices(A, b, 2)) == {(0, 0), (1, 0), (0, 1), (1, 1)}
        assert polyhedron_is_bounded(A, 2).trivial
        assert not polyhedron_is_bounded(A[:3], 2).trivial
