import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def coalgebras():
    """Shared DihedralCoalgebra instances keyed by (N, variant)."""
    from dihedral_lie.dihedral import DihedralCoalgebra
    cache = {}

    def get(N, variant="D"):
        if (N, variant) not in cache:
            cache[(N, variant)] = DihedralCoalgebra(N, variant)
        return cache[(N, variant)]
    return get
