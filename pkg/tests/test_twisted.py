"""
Unit tests for diagram automorphisms, twisted frames, Q⁺/R⁻, σ̃ and η̃
"""
import pytest

from app.core.errors import InvalidTwistError, ParabolicInclusionError, SpecParseError
from app.core.rational import is_zero
from app.core.sampling import RationalSampler
from app.geometry.cones import gamma_PR
from app.geometry.parabolic import enumerate_standard_parabolics, interval, relative_bases
from app.geometry.root_system import system_from_spec
from app.geometry.twisted import (
    EXHAUSTIVE,
    TWISTED_CHECKS,
    TwistedContext,
    eta_tilde,
    eval_sigma,
    eval_sigma_tilde,
    parse_twist,
    plus_minus,
    q_kernel_part,
    q_map,
    sigma_tilde_by_P,
    system_with_twist,
    twisted_relative_bases,
    twisted_weyl_sets,
    verify_twisted_identities,
)
from app.models.enums import IdentityId
from app.verification.suite import load_context

pytestmark = pytest.mark.twisted

FULL3 = frozenset({0, 1, 2})


class TestParseTwist:
    """Test cases for twist literals"""

    def test_identity_forms(self):
        """Test "", "id" and "identity" all give θ₀ = 1"""
        rs = system_from_spec("A3")
        for text in ("", "id", "identity", None):
            theta = parse_twist(rs, text)
            assert theta.is_identity
            assert theta.order == 1

    def test_flip_on_A3(self):
        """Test the reversal of the A3 diagram"""
        theta = parse_twist(system_from_spec("A3"), "flip")
        assert theta.perm == (2, 1, 0)
        assert theta.order == 2
        assert theta.label == "flip"

    def test_swap_on_D4(self):
        """Test the D4 leg swap and that flip means the same on D"""
        rs = system_from_spec("D4")
        assert parse_twist(rs, "swap").perm == (0, 1, 3, 2)
        assert parse_twist(rs, "flip").perm == (0, 1, 3, 2)

    def test_triality(self):
        """Test a 1-based perm= literal of order 3 on D4"""
        theta = parse_twist(system_from_spec("D4"), "perm=3,2,4,1")
        assert theta.perm == (2, 1, 3, 0)
        assert theta.order == 3
        assert theta.label == "perm=3,2,4,1"

    @pytest.mark.parametrize("label,text", [("A3", "perm=1,3,2"), ("B2", "flip"), ("A3", "swap"),
                                            ("A3", "perm=1,2")])
    def test_invalid_twist(self, label, text):
        """Test permutations that break the Cartan matrix or are not permutations"""
        with pytest.raises(InvalidTwistError):
            parse_twist(system_from_spec(label), text)

    @pytest.mark.parametrize("text", ["rotate", "perm=a", "perm=1,,2"])
    def test_malformed_twist(self, text):
        """Test that unknown or malformed literals raise SpecParseError"""
        with pytest.raises(SpecParseError):
            parse_twist(system_from_spec("A3"), text)

    def test_system_with_twist(self):
        """Test "A3:flip", an explicit twist argument and the untwisted form"""
        rs, theta = system_with_twist("A3:flip")
        assert rs.label == "A3"
        assert theta.perm == (2, 1, 0)
        assert system_with_twist("A3", "flip")[1].perm == (2, 1, 0)
        assert system_with_twist("A3")[1] is None


class TestDiagramAutomorphism:
    """Test cases for the induced isometry and orbit helpers"""

    def test_apply_moves_simple_roots(self, ctx_a3_flip):
        """Test θ₀α_i = α_{θ(i)} and θ₀² = 1"""
        rs, theta = ctx_a3_flip.rs, ctx_a3_flip.theta
        for i in range(rs.rank):
            assert theta.apply(rs.simple_roots[i]) == rs.simple_roots[theta.perm[i]]
        v = tuple(RationalSampler(4).rats(rs.dim))
        assert theta.apply(theta.apply(v)) == v

    def test_average_is_fixed(self, ctx_a3_flip):
        """Test that the average is θ₀-fixed and idempotent"""
        theta = ctx_a3_flip.theta
        v = tuple(RationalSampler(8).rats(ctx_a3_flip.rs.dim))
        avg = theta.average(v)
        assert theta.apply(avg) == avg
        assert theta.average(avg) == avg

    def test_closure_and_interior(self, ctx_a3_flip):
        """Test Q⁺ and R⁻ for the flip"""
        theta = ctx_a3_flip.theta
        assert theta.closure(frozenset({0})) == frozenset({0, 2})
        assert theta.interior(frozenset({0, 1})) == frozenset({1})
        assert theta.orbits() == [frozenset({0, 2}), frozenset({1})]
        assert theta.is_stable(frozenset({1}))
        assert not theta.is_stable(frozenset({0}))


class TestTwistedContext:
    """Test cases for the frame of θ₀-stable parabolics"""

    def test_stable_subsets(self, ctx_a3_flip):
        """Test the four stable standard parabolics of A3 under the flip"""
        assert isinstance(ctx_a3_flip, TwistedContext)
        assert set(ctx_a3_flip.standard_subsets()) == {frozenset(), frozenset({1}), frozenset({0, 2}), FULL3}
        assert ctx_a3_flip.label == "A3:flip"

    def test_fixed_elements(self, ctx_a3_flip, ctx_d4_swap):
        """Test |W^θ| = 8 for A3 flip and 48 for D4 swap"""
        assert len(ctx_a3_flip.elements()) == 8
        assert len(ctx_d4_swap.elements()) == 48
        assert ctx_a3_flip.admissible_element(ctx_a3_flip.W.identity)

    def test_dimensions(self, ctx_a3_flip):
        """Test that a_S̃ counts θ₀-orbits outside S"""
        assert ctx_a3_flip.a_std(frozenset()) == 2
        assert ctx_a3_flip.a_std(frozenset({1})) == 1
        assert ctx_a3_flip.a_std(frozenset({0, 2})) == 1
        assert ctx_a3_flip.a_std(FULL3) == 0

    def test_plain_frame(self, ctx_a3_flip):
        """Test that the untwisted frame shares the Weyl group"""
        assert not ctx_a3_flip.plain.twisted
        assert ctx_a3_flip.plain.W is ctx_a3_flip.W
        assert len(ctx_a3_flip.plain.standard_subsets()) == 8


class TestPlusMinus:
    """Test cases for Q⁺ ⊆ R⁻, σ̃ and η̃"""

    def test_no_stable_parabolic_between(self, ctx_a3_flip):
        """Test Q = {1}, R = {1,2}: Q⁺ = {1,3} ⊄ R⁻ = {2}"""
        pm = plus_minus(ctx_a3_flip.theta, frozenset({0}), frozenset({0, 1}))
        assert pm.plus == frozenset({0, 2})
        assert pm.minus == frozenset({1})
        assert not pm.exists

    def test_inclusion_required(self, ctx_a3_flip):
        """Test that Q ⊄ R is refused"""
        with pytest.raises(ParabolicInclusionError):
            plus_minus(ctx_a3_flip.theta, frozenset({0, 1}), frozenset({0}))

    def test_sigma_tilde_vanishes_without_stable_parabolic(self, ctx_a3_flip, sampler):
        """Test σ̃_Q^R = 0 and no admissible P̃ when Q⁺ ⊄ R⁻"""
        H = sampler.alpha_point(ctx_a3_flip.rs)
        Q, R = frozenset({0}), frozenset({0, 1})
        assert eval_sigma_tilde(ctx_a3_flip, Q, R, H) == 0
        assert sigma_tilde_by_P(ctx_a3_flip, Q, R, H) == {}

    def test_sigma_tilde_on_G(self, ctx_a3_flip, sampler):
        """Test σ̃_G^G = 1"""
        for _ in range(10):
            H = sampler.alpha_point(ctx_a3_flip.rs)
            assert eval_sigma_tilde(ctx_a3_flip, FULL3, FULL3, H) == 1

    def test_sigma_tilde_independent_of_P(self, ctx_a3_flip, sampler):
        """Test that every admissible P̃ gives the same σ̃_∅^G"""
        for _ in range(30):
            H = sampler.alpha_point(ctx_a3_flip.rs)
            values = sigma_tilde_by_P(ctx_a3_flip, frozenset(), FULL3, H)
            assert len(values) == 4
            assert len(set(values.values())) == 1

    def test_eta_tilde(self, ctx_a3_flip):
        """Test η̃(∅, G) = 0 and η̃(G, G) = 1"""
        assert eta_tilde(ctx_a3_flip, frozenset(), FULL3) == 0
        assert eta_tilde(ctx_a3_flip, FULL3, FULL3) == 1
        assert eta_tilde(ctx_a3_flip, frozenset({0, 1}), frozenset({0})) == 0


class TestQMap:
    """Test cases for q(X) = ((1 − θ₀)X)_Q"""

    def test_kernel_part(self, ctx_a3_flip):
        """Test Q₀ = Q ∩ θ₀⁻¹Q"""
        theta = ctx_a3_flip.theta
        assert q_kernel_part(theta, frozenset({0, 1})) == frozenset({1})
        assert q_kernel_part(theta, frozenset({0, 2})) == frozenset({0, 2})
        assert q_kernel_part(theta, frozenset()) == frozenset()

    def test_fixed_vectors_are_in_kernel(self, ctx_a3_flip):
        """Test q(X) = 0 for θ₀-fixed X"""
        sampler = RationalSampler(21)
        for Q in (frozenset(), frozenset({0}), frozenset({0, 1})):
            X = ctx_a3_flip.theta.average(tuple(sampler.rats(ctx_a3_flip.rs.dim)))
            assert is_zero(q_map(ctx_a3_flip, Q, X))


@pytest.mark.integration
class TestTwistedIdentities:
    """Test cases for the twisted catalogue checks"""

    @pytest.mark.parametrize("identity", sorted(TWISTED_CHECKS, key=lambda i: i.value))
    def test_identity_holds_on_A3_flip(self, ctx_a3_flip, identity):
        """Test each twisted identity on A3 with the flip"""
        tally = verify_twisted_identities(ctx_a3_flip, identity, 10, 5)
        assert tally.passed, tally.witnesses
        # as exaustivas registram um caso por par (P, R) ou (Q, R)
        exhaustive = {IdentityId.TWISTED_BASES: 9, IdentityId.PLUS_MINUS: 27}
        assert set(exhaustive) == EXHAUSTIVE
        assert tally.checked == exhaustive.get(identity, 10)

    def test_sigma_disjoint_runs_untwisted(self, ctx_a3_flip):
        """Test the disjoint σ supports on the untwisted frame"""
        tally = verify_twisted_identities(ctx_a3_flip, IdentityId.SIGMA_DISJOINT, 10, 5)
        assert tally.passed, tally.witnesses

    def test_identity_on_D4_swap(self, ctx_d4_swap):
        """Test the σ̃ independence on D4 with the leg swap"""
        tally = verify_twisted_identities(ctx_d4_swap, IdentityId.SIGMA_TILDE, 5, 2)
        assert tally.passed, tally.witnesses


@pytest.fixture(scope="module", params=["A2", "A3"])
def identity_pair(request):
    """(plain frame, the same system with θ₀ = id)"""
    return load_context(request.param), load_context(f"{request.param}:id")


def _point(rs, sampler):
    return rs.from_alpha_values([sampler.nonzero() for _ in range(rs.rank)])


class TestIdentityTwist:
    """Test cases for θ₀ = id reproducing the untwisted frame"""

    def test_frame(self, identity_pair):
        """Test that every subset is stable and W is unchanged"""
        plain, ctx = identity_pair
        assert isinstance(ctx, TwistedContext)
        assert ctx.theta.is_identity
        assert ctx.standard_subsets() == plain.standard_subsets()
        assert len(ctx.W) == len(plain.W)

    def test_bases_match(self, identity_pair):
        """Test Δ_P^R and the coweights against the plain bases"""
        plain, ctx = identity_pair
        rs = ctx.rs
        for R in enumerate_standard_parabolics(rs):
            for P in interval(frozenset(), R):
                twisted = twisted_relative_bases(rs, ctx.theta, P, R)
                base = relative_bases(rs, P, R)
                assert twisted.delta == base.delta
                assert twisted.coweights == base.coweights
                assert twisted.delta_hat == base.delta_hat

    def test_sigma_tilde_is_sigma(self, identity_pair):
        """Test σ̃_Q^R(H) = σ_Q^R(H) point by point"""
        _, ctx = identity_pair
        rs = ctx.rs
        sampler = RationalSampler(21)
        for _ in range(10):
            H = _point(rs, sampler)
            for R in enumerate_standard_parabolics(rs):
                for Q in interval(frozenset(), R):
                    assert eval_sigma_tilde(ctx, Q, R, H) == eval_sigma(rs, Q, R, H)

    def test_gamma_is_plain_gamma(self, identity_pair):
        """Test Γ̃_P^R(H, X) = Γ_P^R(H, X) point by point"""
        plain, ctx = identity_pair
        rs = ctx.rs
        sampler = RationalSampler(22)
        for _ in range(10):
            H, X = _point(rs, sampler), _point(rs, sampler)
            for R in enumerate_standard_parabolics(rs):
                for P in interval(frozenset(), R):
                    expected = gamma_PR(plain, plain.std(P), plain.std(R), H, X)
                    assert gamma_PR(ctx, ctx.std(P), ctx.std(R), H, X) == expected

    def test_weyl_sets_match(self, identity_pair):
        """Test that every element of W(𝔞_M) is θ₀-fixed"""
        plain, ctx = identity_pair
        for M in ctx.standard_subsets():
            assert twisted_weyl_sets(ctx, M) == plain.W.weyl_set_M(M)

    @pytest.mark.parametrize("identity", sorted(TWISTED_CHECKS, key=lambda i: i.value))
    def test_twisted_catalogue_holds(self, identity_pair, identity):
        """Test every twisted identity on the θ₀ = id frame"""
        _, ctx = identity_pair
        tally = verify_twisted_identities(ctx, identity, 5, 13)
        assert tally.passed, tally.witnesses
