"""
Pytest configuration and fixtures for testing
"""
import pytest
from fastapi.testclient import TestClient
from fractions import Fraction

from main import app
from app.core.sampling import RationalSampler
from app.geometry.families import family_from_T
from app.verification.suite import load_context


# Frames are cached per process by load_context, so session scope is cheap

@pytest.fixture(scope="session")
def ctx_a1():
    return load_context("A1")


@pytest.fixture(scope="session")
def ctx_a2():
    return load_context("A2")


@pytest.fixture(scope="session")
def ctx_a3():
    return load_context("A3")


@pytest.fixture(scope="session")
def ctx_b2():
    return load_context("B2")


@pytest.fixture(scope="session")
def ctx_g2():
    return load_context("G2")


@pytest.fixture(scope="session")
def ctx_d4():
    return load_context("D4")


@pytest.fixture(scope="session")
def ctx_a3_flip():
    return load_context("A3:flip")


@pytest.fixture(scope="session")
def ctx_d4_swap():
    return load_context("D4:swap")


@pytest.fixture(params=["A2", "B2", "G2", "A3"])
def small_ctx(request):
    """Untwisted frames cheap enough for exhaustive loops"""
    return load_context(request.param)


@pytest.fixture
def sampler():
    """Seeded sampler, fresh for each test"""
    return RationalSampler(20240601)


@pytest.fixture
def rho_family_a2(ctx_a2):
    """family_from_T with T = ρ^∨ = (1, 0, -1): the regular hexagon of area 3"""
    T = (Fraction(1), Fraction(0), Fraction(-1))
    return family_from_T(ctx_a2.W, T)


@pytest.fixture(scope="module")
def client():
    """
    Create a test client for the HTTP app
    """
    with TestClient(app) as test_client:
        yield test_client
