import pytest
from hypothesis import HealthCheck, settings

from trapord.corpus import load_corpus

# fixed-seed property runs: same examples on every machine
settings.register_profile(
    "repro",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repro")


@pytest.fixture(scope="session")
def jaw():
    return load_corpus("jaw").poset


@pytest.fixture(scope="session")
def improper():
    return load_corpus("improper").poset


@pytest.fixture(scope="session")
def pnu():
    return load_corpus("pnu").poset
