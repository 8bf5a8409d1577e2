"""
Unit tests for the Laplace side: formal exponential sums, γ polynomials,
(G,M)-families, radicial expansions and ω
"""
import pytest
import sympy as sp
from fractions import Fraction

from app.core.config import GM_SAMPLE_CAP, OMEGA_MIN_WALLS
from app.core.errors import PoleError, UnsupportedTestFunctionError
from app.core.rational import zero
from app.core.sampling import RationalSampler
from app.geometry.families import family_from_mapping
from app.geometry.gm_families import (
    GM_CHECKS,
    _omega_parameters,
    gm_from_family,
    omega_direction,
    omega_form,
    omega_regrouped,
    omega_scalar,
    on_wall,
    parse_test_function,
    radicial_differential,
    radicial_expansion,
    radicial_family,
    radicial_orthogonal_family,
    validate_gm_family,
    verify_gm_identities,
    verify_product_formula,
)
from app.geometry.laplace import (
    ExpValue,
    FormalExpSum,
    RationalFn,
    epsilon,
    formal_equal,
    gamma_M_laplace,
    gamma_M_poly,
    gamma_M_value,
    gamma_PR_laplace,
    poly_terms,
)
from app.models.enums import IdentityId
from app.verification.suite import load_context

pytestmark = pytest.mark.families

F = Fraction
P0 = frozenset()


class TestRationalFunctions:
    """Test cases for RationalFn, ExpValue and FormalExpSum"""

    def test_monomial_evaluation(self):
        """Test 2 / Λ((1, 0)) at (4, 1) and on its pole"""
        fn = RationalFn.monomial(2, [(F(1), F(0))])
        assert fn.evaluate((F(4), F(1))) == F(1, 2)
        with pytest.raises(PoleError):
            fn.evaluate((F(0), F(1)))

    def test_cancellation(self):
        """Test that f − f is the zero function"""
        fn = RationalFn.monomial(3, [(F(1), F(2))])
        assert not (fn - fn)
        assert (fn * 2).evaluate((F(1), F(0))) == 6

    def test_exp_value_arithmetic(self):
        """Test sums, products and the rational part"""
        value = ExpValue.constant(3) + ExpValue({1: 2})
        assert value.as_dict() == {"0": "3", "1": "2"}
        assert value.rational is None
        assert (ExpValue.constant(2) * ExpValue.constant(F(1, 4))).rational == F(1, 2)
        assert ExpValue().rational == 0

    def test_laurent_limit_removes_pole(self):
        """Test (e^t − 1)/t → 1 at t = 0"""
        pole = RationalFn.monomial(1, [(F(1),)])
        fes = FormalExpSum.exp((F(1),), pole) - FormalExpSum.exp((F(0),), pole)
        assert fes.laurent_limit((F(0),), (F(1),)).rational == 1

    def test_surviving_pole(self):
        """Test that e^t / t has no limit and a direction on the pole is refused"""
        single = FormalExpSum.exp((F(1),), RationalFn.monomial(1, [(F(1),)]))
        with pytest.raises(PoleError):
            single.laurent_limit((F(0),), (F(1),))
        with pytest.raises(PoleError):
            single.laurent_limit((F(0),), (F(0),))

    def test_formal_equality(self, sampler):
        """Test equality up to rearrangement and inequality after adding a term"""
        pole = RationalFn.monomial(1, [(F(1), F(1))])
        left = FormalExpSum.exp((F(1), F(0)), pole)
        right = FormalExpSum.exp((F(1), F(0)), RationalFn.monomial(F(1, 2), [(F(1), F(1))]) * 2)
        assert formal_equal(left, right, sampler)
        assert formal_equal(left, right, sampler, exact=True)
        assert not formal_equal(left, right + FormalExpSum.exp((F(0), F(0))), sampler)


class TestVolumePolynomials:
    """Test cases for γ_P^R and γ_M"""

    def test_gamma_trivial_chain(self, ctx_a2):
        """Test γ_P^P(Λ, X) = 1"""
        P = ctx_a2.std(frozenset({0}))
        fes = gamma_PR_laplace(ctx_a2, P, P, (F(1), F(2), F(3)))
        assert fes.evaluate((F(1), F(5), F(7))).rational == 1

    def test_gamma_M_on_A1(self, ctx_a1):
        """Test γ_{M₀} = 2 for X_P = ±α^∨"""
        fam = family_from_mapping(ctx_a1.W, {"T": ["1", "-1"]})
        result = gamma_M_poly(ctx_a1, P0, fam, RationalSampler(2))
        assert result.value == 2
        assert result.independent

    def test_gamma_M_on_A2_rho(self, ctx_a2, rho_family_a2, sampler):
        """Test γ_{M₀} = 3 for the ρ^∨ hexagon, independent of Λ"""
        result = gamma_M_poly(ctx_a2, P0, rho_family_a2, sampler)
        assert result.value == 3
        assert result.independent
        assert gamma_M_value(ctx_a2, P0, rho_family_a2, result.forms[1]) == 3

    def test_gamma_M_limit_at_zero(self, ctx_a2, rho_family_a2):
        """Test that the limit of γ_{M₀}(Λ, 𝒳) at Λ = 0 is the volume"""
        whole = gamma_M_laplace(ctx_a2, P0, rho_family_a2)
        direction = (F(3), F(-1), F(-2))
        assert whole.laurent_limit(zero(3), direction) == ExpValue.constant(3)

    def test_epsilon_parity_under_negation(self, ctx_a2):
        """Test ε_{P₀}(−Λ) = (−1)^{a} ε_{P₀}(Λ) with a = 2"""
        eps = epsilon(ctx_a2, ctx_a2.P0, ctx_a2.G)
        lam = (F(3), F(-1), F(-2))
        assert eps.evaluate(tuple(-x for x in lam)) == eps.evaluate(lam)

    def test_poly_terms(self):
        """Test the JSON monomial listing"""
        x, y = sp.symbols("x y")
        poly = sp.Poly(sp.Rational(1, 2) * x * y + 3 * x, x, y, domain="QQ")
        assert poly_terms(poly) == [{"exponents": [1, 0], "coefficient": "3"},
                                    {"exponents": [1, 1], "coefficient": "1/2"}]


class TestGMFamilies:
    """Test cases for exponential (G,M)-families"""

    def test_validation_on_A2(self, ctx_a2, rho_family_a2, sampler):
        """Test compatibility, decomposition and smoothness for M₀ with Q = G"""
        gmf = gm_from_family(ctx_a2, rho_family_a2, P0)
        report = validate_gm_family(ctx_a2, gmf, ctx_a2.G, sampler)
        assert report.passed

    def test_product_formula(self, ctx_a2, rho_family_a2, sampler):
        """Test (c·d)_M^G = Σ_Q c_M^Q d_Q^G for two families on A2"""
        other = family_from_mapping(ctx_a2.W, {"T": ["2", "-1", "-1"]})
        report = verify_product_formula(ctx_a2, rho_family_a2, other, P0, ctx_a2.G, sampler)
        assert report.formal
        assert report.at_zero


class TestRadicial:
    """Test cases for radicial families and the operator D_L"""

    def test_A1_expansion(self, ctx_a1, sampler):
        """Test γ∘j(z) = z₁ + z₂ on A1"""
        expansion = radicial_expansion(ctx_a1, P0, sampler)
        z1, z2 = expansion.symbols
        assert expansion.degree == 1
        assert expansion.agree
        assert expansion.multilinear
        assert expansion.basis_poly.as_expr() == z1 + z2
        assert len(expansion.basis_coefficients) == 2
        assert expansion.value((F(1, 2), F(3))) == F(7, 2)

    def test_A1_family_matches_direct_gamma(self, ctx_a1, sampler):
        """Test the expansion against γ of the orthogonal family X_P = Σ z_β β^∨"""
        expansion = radicial_expansion(ctx_a1, P0, sampler)
        z = (F(1, 2), F(3))
        points = radicial_orthogonal_family(ctx_a1, radicial_family(ctx_a1, P0, ["1/2", "3"]))
        assert gamma_M_value(ctx_a1, P0, points, (F(1), F(-2))) == expansion.value(z)

    def test_A1_differential(self, ctx_a1, sampler):
        """Test lim = D g at 0 for g = y1·exp(y2)"""
        expansion = radicial_expansion(ctx_a1, P0, sampler)
        report = radicial_differential(expansion, "y1*exp(y2)")
        assert report.limit == 1
        assert report.derivative == 1
        assert report.agree

    def test_A2_projected_expansion(self, ctx_a2, sampler):
        """Test the M₀ family projected on L = {α₁}"""
        expansion = radicial_expansion(ctx_a2, frozenset({0}), sampler, projected=True)
        assert expansion.degree == 1
        assert expansion.agree

    def test_parse_accepts_polynomial_times_exp(self):
        """Test y1^2·exp(y2)"""
        expr, ys = parse_test_function("y1^2*exp(y2)", 2)
        assert expr == ys[0] ** 2 * sp.exp(ys[1])

    @pytest.mark.parametrize("text,count", [
        ("sin(y1)", 2),
        ("y3", 2),
        ("1/y1", 2),
        ("'y1'", 2),
        ("", 2),
        ("__import__", 2),
    ])
    def test_parse_rejects(self, text, count):
        """Test that anything outside p(y)·exp(q(y)) is refused"""
        with pytest.raises(UnsupportedTestFunctionError):
            parse_test_function(text, count)


class TestOmega:
    """Test cases for ω_{Q|P}^T(λ, μ)"""

    def test_A1_at_origin(self, ctx_a1):
        """Test ω = 4 at λ = μ = 0 for T = α^∨, directly and regrouped"""
        T = (F(1), F(-1))
        origin = zero(2)
        sampler = RationalSampler(3)
        form = omega_form(ctx_a1, T, P0, P0)
        direction = omega_direction(ctx_a1, form, P0, P0, sampler)
        value = omega_scalar(ctx_a1, T, P0, P0, origin, origin, direction=direction)
        assert value.rational == 4
        assert omega_regrouped(ctx_a1, T, P0, P0, origin, origin, direction) == value

    def test_not_associated(self, ctx_a2):
        """Test that ω vanishes when P and Q are not associated"""
        T = (F(1), F(0), F(-1))
        value = omega_scalar(ctx_a2, T, frozenset({0}), P0, zero(3), zero(3))
        assert value.terms == {}
        assert value.rational == 0


@pytest.mark.integration
class TestGMIdentities:
    """Test cases for the sampled Laplace-side identities"""

    @pytest.mark.parametrize("identity", [
        IdentityId.EPSILON_SIGN,
        IdentityId.GAMMA_POLY,
        IdentityId.GAMMA_M_POLY,
        IdentityId.GM_DECOMPOSITION,
        IdentityId.RADICIAL,
        IdentityId.RADICIAL_DIFFERENTIAL,
    ])
    def test_identity_holds_on_A2(self, ctx_a2, identity):
        """Test a Laplace-side identity on A2 with a fixed seed"""
        assert identity in GM_CHECKS
        tally = verify_gm_identities(ctx_a2, identity, 8, 11)
        assert tally.passed, tally.witnesses
        assert tally.checked == 8

    def test_sample_cap(self, ctx_a1):
        """Test that runs beyond GM_SAMPLE_CAP are cut and noted"""
        tally = verify_gm_identities(ctx_a1, IdentityId.EPSILON_SIGN, GM_SAMPLE_CAP + 5, 1)
        assert tally.checked == GM_SAMPLE_CAP
        assert tally.notes["samples_capped"] == GM_SAMPLE_CAP

    def test_twisted_product_formula_is_not_capped(self, ctx_a1, ctx_a3_flip, mocker):
        """Test that the twisted transfer runs every requested sample"""
        mocker.patch("app.geometry.gm_families.GM_SAMPLE_CAP", 2)
        capped = verify_gm_identities(ctx_a1, IdentityId.EPSILON_SIGN, 4, 1)
        assert capped.checked == 2
        tally = verify_gm_identities(ctx_a3_flip, IdentityId.TWISTED_PRODUCT_FORMULA, 4, 1)
        assert tally.passed, tally.witnesses
        assert tally.checked == 4
        assert "samples_capped" not in tally.notes

    @pytest.mark.parametrize("label", ["A1", "A2"])
    def test_omega_reaches_wall_quota(self, label):
        """Test that ω checks at least OMEGA_MIN_WALLS singular base points"""
        ctx = load_context(label)
        tally = verify_gm_identities(ctx, IdentityId.OMEGA, OMEGA_MIN_WALLS, 2)
        assert tally.passed, tally.witnesses
        assert tally.notes["walls"] >= OMEGA_MIN_WALLS
        assert tally.checked >= OMEGA_MIN_WALLS

    def test_omega_wall_quota_follows_samples(self, ctx_a1, mocker):
        """Test that a small run asks for as many walls as samples"""
        mocker.patch("app.geometry.gm_families.OMEGA_MIN_WALLS", 50)
        tally = verify_gm_identities(ctx_a1, IdentityId.OMEGA, 6, 4)
        assert tally.passed, tally.witnesses
        assert tally.notes["walls"] >= 6


class TestOmegaSampling:
    """Test cases for the singular (λ, μ) draws of ω"""

    def test_base_points_sit_on_walls(self, ctx_a1):
        """Test that associated draws on A1 land on poles of the form"""
        sampler = RationalSampler(5)
        walls = 0
        for _ in range(20):
            P, Q, lam, mu = _omega_parameters(ctx_a1, sampler)
            form = omega_form(ctx_a1, sampler.alpha_point(ctx_a1.rs), P, Q)
            if form:
                assert on_wall(form, tuple(lam) + tuple(mu))
                walls += 1
        assert walls > 0
