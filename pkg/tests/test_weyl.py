"""
Unit tests for Weyl group tables, cosets, Weyl sets and facets
"""
import gc
import pytest
import weakref

from app.core.errors import GroupBoundExceededError
from app.core.rational import norm2
from app.core.sampling import RationalSampler
from app.geometry.root_system import system_from_spec
from app.geometry.weyl import WeylGroup, generate_weyl, weyl_order
from app.models.enums import RootType

pytestmark = pytest.mark.weyl


class TestWeylGroupTables:
    """Test cases for enumeration and elementary operations"""

    @pytest.mark.parametrize("label,order", [("A1", 2), ("A2", 6), ("A3", 24), ("B2", 8),
                                             ("B3", 48), ("C3", 48), ("G2", 12), ("D4", 192)])
    def test_order(self, label, order):
        """Test |W| against the closed formula"""
        rs = system_from_spec(label)
        assert len(generate_weyl(rs)) == order
        assert weyl_order(rs.root_type, rs.rank) == order

    def test_weyl_order_formula(self):
        """Test the closed formula directly"""
        assert weyl_order(RootType.A, 4) == 120
        assert weyl_order(RootType.D, 5) == 1920
        assert weyl_order(RootType.G, 2) == 12

    def test_bound_exceeded(self):
        """Test that a group above the bound is refused"""
        with pytest.raises(GroupBoundExceededError):
            WeylGroup(system_from_spec("A3"), bound=10)

    def test_inverse_and_words(self, ctx_b2):
        """Test s·s⁻¹ = 1, ℓ(s⁻¹) = ℓ(s) and from_word(word(s)) = s"""
        W = ctx_b2.W
        for s in range(len(W)):
            assert W.mul(s, W.inv(s)) == W.identity
            assert W.length(W.inv(s)) == W.length(s)
            assert W.from_word(W.word(s)) == s

    def test_longest_element(self, small_ctx):
        """Test that the longest element has length |Φ⁺|"""
        W = small_ctx.W
        assert max(W.length(s) for s in range(len(W))) == small_ctx.rs.n_positive

    def test_inversion_set_size(self, ctx_a3):
        """Test |R(s)| = ℓ(s)"""
        W = ctx_a3.W
        assert all(len(W.inversion_set(s)) == W.length(s) for s in range(len(W)))

    def test_action_matches_root_permutation(self, ctx_g2):
        """Test s(β_k) = β_{perm[k]} and that s is an isometry"""
        W, rs = ctx_g2.W, ctx_g2.rs
        sampler = RationalSampler(11)
        for s in range(len(W)):
            for k, root in enumerate(rs.roots):
                assert W.act(s, root) == rs.roots[W.act_root(s, k)]
            v = tuple(sampler.rats(rs.dim))
            assert norm2(W.act(s, v)) == norm2(v)

    def test_twist_is_involutive(self, ctx_a3):
        """Test θ₀(θ₀(s)) = s for the A3 flip and θ₀ = id fixes everything"""
        W = ctx_a3.W
        flip = (2, 1, 0)
        for s in range(len(W)):
            assert W.twist(W.twist(s, flip), flip) == s
            assert W.twist(s, (0, 1, 2)) == s

    def test_tables_are_cached_per_group(self):
        """Test that memoized tables live on the group and die with it"""
        W = WeylGroup(system_from_spec("A2"))
        first = W.parabolic_subgroup(frozenset({0}))
        assert W.parabolic_subgroup(frozenset({0})) is first
        assert len(first) == 2
        assert W.weyl_set_M(frozenset({0})) is W.weyl_set_M(frozenset({0}))
        ref = weakref.ref(W)
        del W
        gc.collect()
        assert ref() is None


class TestCosets:
    """Test cases for parabolic subgroups and minimal coset representatives"""

    def test_parabolic_subgroup_sizes(self, ctx_a3):
        """Test |W_P| for a few P in A3"""
        W = ctx_a3.W
        assert len(W.parabolic_subgroup(frozenset())) == 1
        assert len(W.parabolic_subgroup(frozenset({0, 1}))) == 6
        assert len(W.parabolic_subgroup(frozenset({0, 2}))) == 4
        assert len(W.parabolic_subgroup(frozenset({0, 1, 2}))) == 24

    def test_left_coset_representatives(self, ctx_a3):
        """Test |W/W_P| distinct minimal representatives, each of minimal length"""
        W = ctx_a3.W
        P = frozenset({0, 1})
        reps = {W.min_left_coset_rep(s, P) for s in range(len(W))}
        assert len(reps) == len(W) // len(W.parabolic_subgroup(P))
        for s in range(len(W)):
            r = W.min_left_coset_rep(s, P)
            assert W.length(r) <= W.length(s)

    def test_double_cosets(self, ctx_a2):
        """Test |W_P\\W/W_P| = 2 for P = {α₁} in A2"""
        P = frozenset({0})
        assert len(ctx_a2.W.double_coset_reps(P, P)) == 2


class TestWeylSets:
    """Test cases for W(𝔞_P, 𝔞_Q), W(𝔞_M) and W(M)"""

    def test_weyl_set_M_extremes(self, ctx_a3):
        """Test W(𝔞_{M₀}) = W and W(𝔞_G) = {1}"""
        W = ctx_a3.W
        assert len(W.weyl_set_M(frozenset())) == len(W)
        assert W.weyl_set_M(frozenset({0, 1, 2})) == (0,)

    def test_weyl_set_PQ_contains_identity(self, ctx_a3):
        """Test 1 ∈ W(𝔞_P, 𝔞_P) and W(𝔞_P, 𝔞_Q) = ∅ for different sizes"""
        W = ctx_a3.W
        for P in ctx_a3.standard_subsets():
            assert 0 in W.weyl_set_PQ(P, P)
        assert W.weyl_set_PQ(frozenset({0}), frozenset({0, 1})) == ()

    def test_dispatch(self, ctx_a2):
        """Test that weyl_sets routes to the three families"""
        W = ctx_a2.W
        P = frozenset({0})
        assert W.weyl_sets(P) == W.weyl_set_M(P)
        assert W.weyl_sets(P, P) == W.weyl_set_PQ(P, P)
        assert W.weyl_sets(P, P, relative=True) == W.weyl_set_PR(P, P)

    def test_associated_levis_in_A3(self, ctx_a3):
        """Test that all rank-one Levis of A3 are associated, {1,3} only to itself"""
        W = ctx_a3.W
        assert W.associated_standard(frozenset({0})) == [frozenset({0}), frozenset({1}), frozenset({2})]
        assert W.associated_standard(frozenset({0, 2})) == [frozenset({0, 2})]

    def test_weyl_levi_homomorphism(self, ctx_a3):
        """Test that s ↦ s̄ is a homomorphism onto W(M) for every standard M"""
        for M in ctx_a3.standard_subsets():
            assert ctx_a3.W.weyl_levi_homomorphism_holds(M)


class TestFacets:
    """Test cases for semi-standard parabolics and ℱ(M)"""

    def test_decomposition_matches_direct_enumeration(self, small_ctx):
        """Test ℱ(M) = ⊔_s ℱ_s(M) against the direct enumeration"""
        W = small_ctx.W
        for M in small_ctx.standard_subsets():
            facets = W.facet_decomposition(M).facets
            assert len(facets) == len(set(facets))
            assert set(facets) == W.facets_direct(M)

    def test_A2_facet_count(self, ctx_a2):
        """Test 6 chambers, 6 walls and G for M₀ in A2"""
        assert len(ctx_a2.facets(frozenset())) == 13
        assert len(ctx_a2.chambers(frozenset())) == 6

    def test_rank_one_levi_has_two_chambers(self, ctx_a2):
        """Test |𝒫(M)| = 2 when a_M = 1"""
        assert len(ctx_a2.chambers(frozenset({0}))) == 2

    def test_standard_containment(self, ctx_a3):
        """Test std(P) ⊆ std(Q) iff P ⊆ Q"""
        subsets = ctx_a3.standard_subsets()
        for P in subsets:
            assert ctx_a3.std(P).is_standard
            for Q in subsets:
                assert ctx_a3.contains(ctx_a3.std(P), ctx_a3.std(Q)) == (P <= Q)

    def test_lower_and_upper_bound_each_interval(self, ctx_a3):
        """Test Q_s ⊆ Q ⊆ Q^s for every facet of the interval of s"""
        M = frozenset({0})
        dec = ctx_a3.W.facet_decomposition(M)
        for s in dec.elements:
            for Q in dec.intervals[s]:
                assert ctx_a3.contains(dec.lower[s], Q)
                assert ctx_a3.contains(Q, dec.upper[s])
