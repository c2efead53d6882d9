from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from sphertet.families import builtin_families, verify_domain
from sphertet.search import SearchConfig, run_sporadic_search

settings.register_profile(
    "exact",
    deadline=None,
    max_examples=100,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")


@pytest.fixture(scope="session")
def sporadic_report():
    """The full default search, shared across the suite (it is the
    expensive fixture; everything downstream reuses it)."""
    return run_sporadic_search(SearchConfig())


@pytest.fixture(scope="session")
def domain_certificates():
    """Domain certificates for all 42 families, keyed by family id."""
    return {fam.family_id: verify_domain(fam) for fam in builtin_families()}
