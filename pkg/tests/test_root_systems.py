"""
Unit tests for root systems and standard parabolics
"""
import pytest
from fractions import Fraction
from hypothesis import given, settings

from app.core.errors import InvalidRootSystemError, ParabolicInclusionError, SpecParseError
from app.core.rational import dot, neg
from app.core.sampling import RationalSampler
from app.geometry.parabolic import (
    a_dim,
    base_angle_check,
    binomial_sum,
    enumerate_standard_parabolics,
    format_parabolic,
    interval,
    lattice_volume,
    parse_parabolic,
    positive_combination,
    relative_bases,
    verify_positivity_lemmas,
)
from app.geometry.root_system import (
    build_root_system,
    check_invariants,
    coroot_of,
    parse_system_spec,
    system_from_spec,
    validate_type,
)
from app.models.enums import RootType
from tests.strategies import rationals

F = Fraction

POSITIVE_ROOTS = {"A1": 1, "A2": 3, "A3": 6, "B2": 4, "B3": 9, "C3": 9, "D4": 12, "G2": 6}


@pytest.mark.roots
class TestRootSystemConstruction:
    """Test cases for the reflection closure and Cartan data"""

    @pytest.mark.parametrize("label,count", sorted(POSITIVE_ROOTS.items()))
    def test_positive_root_count(self, label, count):
        """Test |Φ⁺| for every catalogue type"""
        rs = system_from_spec(label)
        assert rs.n_positive == count
        assert len(rs.roots) == 2 * count

    @pytest.mark.parametrize("label", sorted(POSITIVE_ROOTS))
    def test_invariants_hold(self, label):
        """Test integrality, reducedness, duality and obtuse simple roots"""
        assert check_invariants(system_from_spec(label)) == []

    def test_simple_roots_come_first(self):
        """Test that roots 0..rank-1 are the simple roots"""
        rs = system_from_spec("A3")
        assert rs.roots[:rs.rank] == rs.simple_roots
        assert all(rs.height(k) == 1 for k in range(rs.rank))

    @pytest.mark.parametrize("label,height", [("A3", 3), ("B2", 3), ("G2", 5), ("D4", 5)])
    def test_highest_root_height(self, label, height):
        """Test the height of the highest root"""
        rs = system_from_spec(label)
        assert max(rs.height(k) for k in range(rs.n_positive)) == height

    def test_cartan_matrices(self):
        """Test off-diagonal Cartan entries of A2, B2 and G2"""
        assert system_from_spec("A2").cartan == ((2, -1), (-1, 2))
        for label, expected in (("B2", [-2, -1]), ("G2", [-3, -1])):
            c = system_from_spec(label).cartan
            assert sorted([c[0][1], c[1][0]]) == expected

    def test_negative_index(self):
        """Test that root N+k is the negative of root k"""
        rs = system_from_spec("B2")
        for k in range(rs.n_positive):
            assert rs.roots[rs.negative(k)] == neg(rs.roots[k])
            assert rs.negative(rs.negative(k)) == k

    def test_simple_reflection(self):
        """Test s_i α_i = −α_i"""
        rs = system_from_spec("G2")
        for i in range(rs.rank):
            assert rs.reflect(i, rs.simple_roots[i]) == neg(rs.simple_roots[i])

    def test_coroot_pairing(self):
        """Test ⟨β, β^∨⟩ = 2 for every root"""
        rs = system_from_spec("C3")
        assert all(dot(b, coroot_of(b)) == 2 for b in rs.roots)

    def test_spec_is_case_insensitive_and_cached(self):
        """Test that "a2" and "A2" build the same object"""
        assert system_from_spec("a2") is system_from_spec("A2")
        assert build_root_system(RootType.A, 2) is system_from_spec("A2")

    @settings(max_examples=40)
    @given(rationals(), rationals())
    def test_alpha_values_inverse(self, x, y):
        """Test α_i(Σ x_i ϖ_i^∨) = x_i"""
        rs = system_from_spec("G2")
        assert rs.alpha_values(rs.from_alpha_values([x, y])) == (x, y)


@pytest.mark.roots
class TestRootSystemErrors:
    """Test cases for rejected system specs"""

    @pytest.mark.parametrize("text", ["E6", "G3", "D3", "A9", "B1"])
    def test_unsupported_type_or_rank(self, text):
        """Test that unknown types and ranks raise InvalidRootSystemError"""
        with pytest.raises(InvalidRootSystemError):
            system_from_spec(text)

    @pytest.mark.parametrize("root_type", [RootType.A, "A", "a"])
    def test_validate_type_accepts_member_and_text(self, root_type):
        """Test that an enum member passes validation like its letter"""
        assert validate_type(root_type, 2) is RootType.A

    def test_build_from_member_without_cache(self):
        """Test that parsed specs build outside the cache"""
        rs = build_root_system.__wrapped__(*parse_system_spec("A2"))
        assert rs.root_type is RootType.A
        assert rs.n_positive == 3

    @pytest.mark.parametrize("text", ["A", "3", "A3x", "", "A-1"])
    def test_malformed_spec(self, text):
        """Test that malformed labels raise SpecParseError"""
        with pytest.raises(SpecParseError):
            system_from_spec(text)


@pytest.mark.parabolic
class TestParabolicParsing:
    """Test cases for 1-based parabolic literals"""

    def test_parse_forms(self):
        """Test "1,3", "{2}", "" and "G" """
        assert parse_parabolic("1,3", 3) == frozenset({0, 2})
        assert parse_parabolic("{2}", 3) == frozenset({1})
        assert parse_parabolic("", 3) == frozenset()
        assert parse_parabolic("G", 3) == frozenset({0, 1, 2})

    @pytest.mark.parametrize("text", ["4", "0", "1,x", "1;2"])
    def test_parse_rejects(self, text):
        """Test out-of-range and malformed subsets"""
        with pytest.raises(SpecParseError):
            parse_parabolic(text, 3)

    def test_format(self):
        """Test the 1-based braces format"""
        assert format_parabolic(frozenset({0, 2})) == "{1,3}"
        assert format_parabolic(frozenset()) == "{}"


@pytest.mark.parabolic
class TestRelativeBases:
    """Test cases for Δ_P^Q, Δ̂_P^Q and their dual lattices"""

    def test_enumeration_size(self):
        """Test that there are 2^rank standard parabolics"""
        rs = system_from_spec("A3")
        assert len(enumerate_standard_parabolics(rs)) == 8
        assert a_dim(rs, frozenset({0})) == 2

    def test_interval(self):
        """Test [P, R] and the inclusion check"""
        assert len(interval(frozenset({0}), frozenset({0, 1, 2}))) == 4
        with pytest.raises(ParabolicInclusionError):
            interval(frozenset({1}), frozenset({0}))

    @pytest.mark.parametrize("label", ["A3", "B3", "C3", "G2"])
    def test_dual_pairings_angles_and_covolume(self, label):
        """Test pairings, obtuse/acute angles, positivity and covolume 1 for every P ⊆ Q"""
        rs = system_from_spec(label)
        for Q in enumerate_standard_parabolics(rs):
            for P in interval(frozenset(), Q):
                base = relative_bases(rs, P, Q)
                n = base.dimension
                for i in range(n):
                    for j in range(n):
                        assert dot(base.delta[i], base.coweights[j]) == int(i == j)
                        assert dot(base.delta_hat[i], base.coroots[j]) == int(i == j)
                assert base_angle_check(base) == (True, True)
                assert positive_combination(base)
                assert lattice_volume(base, base.coroots) == 1

    def test_binomial_sum(self):
        """Test Σ_{P⊆Q⊆R} (−1)^{a_P−a_Q} = [P = R]"""
        rs = system_from_spec("A3")
        for R in enumerate_standard_parabolics(rs):
            for P in interval(frozenset(), R):
                assert binomial_sum(rs, P, R) == int(P == R)

    def test_positivity_lemmas(self):
        """Test the four sampled positivity lemmas on A3"""
        rs = system_from_spec("A3")
        tallies = verify_positivity_lemmas(rs, frozenset({0}), frozenset({0, 1}), frozenset({0, 1, 2}),
                                           40, RationalSampler(5))
        assert set(tallies) == {"root-positive", "coweight-positive", "projected-root", "regular-bound"}
        assert all(t.passed for t in tallies.values())
        assert sum(t.checked for t in tallies.values()) > 0
