"""
Unit tests for the identity catalogue and the suite runner
"""
import json
import pytest

from app.core.config import DEFAULT_SAMPLES
from app.core.errors import SpecParseError
from app.core.sampling import RationalSampler
from app.models.enums import IdentityId
from app.schemas.suite import SuiteConfig
from app.verification.catalogue import CATALOGUE, catalogue_listing, identities_for, run_identity
from app.verification.suite import job_seed, render_text, report_json, run_suite, strip_timing, suite_frames

pytestmark = pytest.mark.integration


def small_config(**overrides) -> SuiteConfig:
    data = {"system_spec": "A2", "identities": ["binomial", "tau-le-tau-hat"], "n_samples": 5, "seed": 3}
    data.update(overrides)
    return SuiteConfig(**data)


class TestCatalogue:
    """Test cases for the identity catalogue"""

    def test_every_identity_is_catalogued(self):
        """Test that the catalogue covers the enum in declaration order"""
        assert list(CATALOGUE) == list(IdentityId)

    def test_plain_frame_skips_twisted_identities(self, ctx_a2):
        """Test that A2 gets no twisted identity"""
        ids = identities_for(ctx_a2)
        assert IdentityId.BINOMIAL in ids
        assert IdentityId.OMEGA in ids
        assert IdentityId.TWISTED_BASES not in ids
        assert IdentityId.CERTIFICATES not in ids

    def test_twisted_frame(self, ctx_a3_flip):
        """Test that A3 with the flip gets the twisted and radicial identities only"""
        ids = identities_for(ctx_a3_flip)
        assert IdentityId.SIGMA_TILDE in ids
        assert IdentityId.CERTIFICATES in ids
        assert IdentityId.RADICIAL in ids
        assert IdentityId.LANGLANDS not in ids

    def test_requested_subset(self, ctx_a2):
        """Test that a requested subset keeps catalogue order"""
        assert identities_for(ctx_a2, ["tau-le-tau-hat", "binomial"]) == [IdentityId.BINOMIAL,
                                                                          IdentityId.TAU_LE_TAU_HAT]

    def test_run_identity_on_wrong_frame(self, ctx_a2):
        """Test that a twisted identity on A2 is refused"""
        with pytest.raises(SpecParseError):
            run_identity(ctx_a2, IdentityId.TWISTED_BASES, 1, RationalSampler(1))

    def test_run_identity_unknown(self, ctx_a2):
        """Test that an unknown identifier is refused"""
        with pytest.raises(SpecParseError):
            run_identity(ctx_a2, "no-such-identity", 1, RationalSampler(1))

    def test_listing(self):
        """Test the JSON listing"""
        listing = catalogue_listing()
        assert len(listing) == len(IdentityId)
        twisted_only = next(item for item in listing if item["identity"] == "plus-minus")
        assert twisted_only["frames"] == ["twisted"]
        radicial = next(item for item in listing if item["identity"] == "radicial")
        assert radicial["frames"] == ["plain", "twisted"]


class TestJobs:
    """Test cases for job seeds and frame expansion"""

    def test_job_seed_is_stable(self):
        """Test that the seed depends only on (seed, frame, identity)"""
        first = job_seed(1, "A2", IdentityId.BINOMIAL)
        assert first == job_seed(1, "A2", IdentityId.BINOMIAL)
        assert first != job_seed(1, "A3", IdentityId.BINOMIAL)
        assert first != job_seed(2, "A2", IdentityId.BINOMIAL)
        assert 0 <= first < 2 ** 64

    def test_default_frames(self):
        """Test that no system runs the untwisted and twisted catalogue"""
        frames = suite_frames(SuiteConfig())
        assert ("A2", None) in frames
        assert ("A3:flip", None) in frames
        assert suite_frames(small_config()) == [("A2", None)]


class TestRunSuite:
    """Test cases for the assembled report"""

    def test_report_shape(self):
        """Test header, frame and identity reports for a small run"""
        report = run_suite(small_config())
        assert report.passed
        assert report.failures == []
        assert report.header.seed == 3
        assert report.header.n_samples == 5
        assert list(report.header.realization) == ["A2"]
        [system] = report.systems
        assert system.label == "A2"
        assert system.weyl_order == 6
        assert [r.identity for r in system.identities] == ["binomial", "tau-le-tau-hat"]

    def test_deterministic(self):
        """Test that the same config gives the same report up to timing"""
        first = run_suite(small_config()).model_dump(mode="json")
        second = run_suite(small_config()).model_dump(mode="json")
        assert strip_timing(first) == strip_timing(second)
        assert "elapsed" not in strip_timing(first)["systems"][0]["identities"][0]

    def test_identity_default_samples(self):
        """Test that an omitted n_samples falls back to the identity's own default"""
        config = SuiteConfig(system_spec="A2", identities=["binomial", "langlands"], seed=3,
                             identity_samples={"langlands": 4})
        [system] = run_suite(config).systems
        by_id = {r.identity: r.n_samples for r in system.identities}
        assert by_id == {"binomial": DEFAULT_SAMPLES, "langlands": 4}

    def test_twisted_frame(self):
        """Test an exhaustive twisted identity through the runner"""
        report = run_suite(SuiteConfig(system_spec="A3:flip", identities=["plus-minus"], n_samples=3))
        [system] = report.systems
        assert system.label == "A3:flip"
        assert system.identities[0].checked == 27
        assert report.passed

    def test_identity_not_on_frame(self):
        """Test that an identity living on none of the frames is refused"""
        with pytest.raises(SpecParseError):
            run_suite(small_config(identities=["twisted-bases"]))

    def test_json_and_text(self):
        """Test sorted JSON keys and the text summary"""
        report = run_suite(small_config())
        data = json.loads(report_json(report))
        assert list(data) == sorted(data)
        assert data["passed"] is True
        text = render_text(report)
        assert "A2  |W| = 6" in text
        assert "binomial" in text
        assert text.endswith("PASSED")

    @pytest.mark.slow
    def test_workers_do_not_change_results(self):
        """Test that splitting the jobs across processes gives the same report"""
        single = run_suite(small_config(workers=1)).model_dump(mode="json")
        split = run_suite(small_config(workers=2)).model_dump(mode="json")
        assert strip_timing(single) == strip_timing(split)
