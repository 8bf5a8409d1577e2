"""
Unit tests for the exact cone-kernel certificates of the twisted frame
"""
import json
import pytest

from app.core.errors import ParabolicInclusionError, SpecParseError
from app.core.sampling import RationalSampler
from app.models.enums import CertificateCase
from app.schemas.certificates import CertificateRequest
from app.verification.certificates import (
    certify_q_map,
    certify_q_map_balanced,
    cone_kernel_certificates,
    count_instances,
    fixed_point_dichotomy,
    fixed_point_kernel,
    verify_certificates,
)
from app.verification.compute import list_certificates

pytestmark = pytest.mark.certificates

FULL3 = frozenset({0, 1, 2})


class TestQMapCertificates:
    """Test cases for the q-map estimates"""

    def test_every_parabolic(self, ctx_a3_flip):
        """Test that the q-map estimate is certified for all eight standard Q"""
        results = cone_kernel_certificates(ctx_a3_flip, CertificateCase.Q_MAP, 5, 1)
        assert len(results) == 8
        assert all(r.holds for r in results)
        assert {r.verdict for r in results} == {"trivial"}

    def test_single_instance(self, ctx_a3_flip):
        """Test Q = {1}: Q₀ = ∅, Q⁺ = {1,3} and a replayed multiplier"""
        result = certify_q_map(ctx_a3_flip, frozenset({0}), RationalSampler(3))
        assert result.holds
        assert result.instance["Q0"] == frozenset()
        assert result.instance["Q_plus"] == frozenset({0, 2})
        assert result.multipliers is not None
        assert result.max_ratio is not None and result.max_ratio > 0

    def test_as_dict(self, ctx_a3_flip):
        """Test the JSON rendering of a certificate"""
        data = certify_q_map(ctx_a3_flip, frozenset({0}), RationalSampler(3)).as_dict()
        assert data["case"] == "q-map"
        assert data["instance"]["Q_plus"] == [0, 2]
        assert data["holds"] is True
        assert all(isinstance(x, str) for x in data["multipliers"])

    @pytest.mark.parametrize("case", [CertificateCase.Q_MAP_BALANCED, CertificateCase.Q_MAP_SHIFTED])
    def test_balanced_cases(self, ctx_a3_flip, case):
        """Test the balanced and shifted estimates on every pair with Q⁺ = R⁻"""
        results = cone_kernel_certificates(ctx_a3_flip, case, 5, 2)
        assert results
        assert all(r.holds for r in results), [r.as_dict() for r in results if not r.holds]
        assert all(r.verdict in ("trivial", "vacuous") for r in results)

    def test_balanced_needs_equal_bounds(self, ctx_a3_flip):
        """Test that Q⁺ ≠ R⁻ is refused"""
        with pytest.raises(ParabolicInclusionError):
            certify_q_map_balanced(ctx_a3_flip, frozenset({0}), frozenset({0, 1}), RationalSampler(1))

    def test_shifted_needs_chain(self, ctx_a3_flip):
        """Test that P' outside [Q₀, Q] is refused"""
        with pytest.raises(ParabolicInclusionError):
            certify_q_map_balanced(ctx_a3_flip, frozenset({0}), frozenset({0, 2}), RationalSampler(1),
                                   frozenset({1}))


class TestSigmaSplit:
    """Test cases for the σ̃ split estimate"""

    def test_plain_and_fixed_splits(self, ctx_a3_flip):
        """Test both splits on every pair admitting a stable parabolic"""
        results = cone_kernel_certificates(ctx_a3_flip, CertificateCase.SIGMA_SPLIT, 5, 4)
        assert results
        assert all(r.holds for r in results), [r.as_dict() for r in results if not r.holds]
        assert {r.instance["split"] for r in results} == {"plain", "fixed"}


def _distinct(results) -> int:
    return len({json.dumps(r.as_dict()["instance"], sort_keys=True) for r in results})


class TestFixedPoints:
    """Test cases for the fixed-point dichotomy and kernel estimates"""

    def test_dichotomy_every_instance(self, ctx_a3_flip):
        """Test every stable P, Q ⊆ P and s₀ ∈ W^P on A3 with the flip"""
        results = cone_kernel_certificates(ctx_a3_flip, CertificateCase.FIXED_POINT_DICHOTOMY, 1, 5)
        # P ∈ {∅, {2}, {1,3}, G}: 1 + 2·2 + 4·4 + 8·24
        assert len(results) == 213
        assert _distinct(results) == 213
        assert all(r.holds for r in results), [r.as_dict() for r in results if not r.holds]
        assert all(r.verdict in ("branch-1", "branch-2") for r in results)

    def test_dichotomy_instance_count_d4(self, ctx_d4_swap):
        """Test the enumeration size on D4 with the swap"""
        # P stável: subconjuntos de {1,2} com ou sem {3,4}
        assert count_instances(ctx_d4_swap, CertificateCase.FIXED_POINT_DICHOTOMY) == 3377

    def test_dichotomy_on_G_with_identity(self, ctx_a3_flip):
        """Test P = G, Q = ∅, s₀ = 1: every vector is fixed, a proper P₁ is produced"""
        result = fixed_point_dichotomy(ctx_a3_flip, FULL3, frozenset(), ctx_a3_flip.W.identity,
                                       RationalSampler(6))
        assert result.holds
        assert result.verdict == "branch-2"

    def test_dichotomy_needs_stable_parabolic(self, ctx_a3_flip):
        """Test that an unstable P is refused"""
        with pytest.raises(ParabolicInclusionError):
            fixed_point_dichotomy(ctx_a3_flip, frozenset({0}), frozenset(), ctx_a3_flip.W.identity,
                                  RationalSampler(6))

    def test_kernel_every_instance(self, ctx_a3_flip):
        """Test every admissible (Q, R, s₀) of the kernel estimate"""
        theta = ctx_a3_flip.theta
        results = cone_kernel_certificates(ctx_a3_flip, CertificateCase.FIXED_POINT_KERNEL, 1, 7)
        assert results
        assert len(results) == _distinct(results) == count_instances(ctx_a3_flip, "fixed-point-kernel")
        assert all(r.holds for r in results), [r.as_dict() for r in results if not r.holds]
        for r in results:
            top = theta.interior(r.instance["R"])
            assert theta.closure(r.instance["Q"] | frozenset(r.instance["s0"])) == top

    def test_kernel_needs_unique_parabolic(self, ctx_a3_flip):
        """Test that several stable parabolics between Q and R are refused"""
        with pytest.raises(ParabolicInclusionError):
            fixed_point_kernel(ctx_a3_flip, frozenset(), FULL3, ctx_a3_flip.W.identity, RationalSampler(8))


@pytest.mark.integration
class TestCertificateRuns:
    """Test cases for the folded certificate tally and the listing command"""

    def test_verify_certificates(self, ctx_a3_flip):
        """Test that every case holds and is noted with its verdict counts"""
        tally = verify_certificates(ctx_a3_flip, 3, 9)
        assert tally.passed, tally.witnesses
        assert set(tally.notes) == {case.value for case in CertificateCase}
        q_map_notes = tally.notes[CertificateCase.Q_MAP.value]
        assert q_map_notes["verdicts"] == {"trivial": 8}
        assert tally.notes[CertificateCase.FIXED_POINT_DICHOTOMY.value]["instances"] == 213

    def test_selected_cases(self, ctx_a3_flip):
        """Test a run restricted to one case"""
        tally = verify_certificates(ctx_a3_flip, 3, 9, cases=("q-map",))
        assert tally.checked == 8
        assert set(tally.notes) == {"q-map"}

    def test_listing(self):
        """Test the listing command on A3 with the flip"""
        out = list_certificates(CertificateRequest(system="A3:flip", case="q-map", n_samples=3))
        assert len(out) == 8
        assert all(item.holds for item in out)
        assert "Q_plus" in out[0].instance

    def test_listing_needs_twisted_frame(self):
        """Test that an untwisted frame is refused"""
        with pytest.raises(SpecParseError):
            list_certificates(CertificateRequest(system="A2", case="q-map"))

    def test_listing_unknown_case(self):
        """Test that an unknown case is refused"""
        with pytest.raises(SpecParseError):
            list_certificates(CertificateRequest(system="A3:flip", case="2.99"))
