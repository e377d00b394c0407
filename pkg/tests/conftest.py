import pytest

from plotkin_pke.rng import RandomStream


@pytest.fixture
def make_rng():
    """Factory for deterministic, test-local random streams."""

    def factory(tag: int = 0) -> RandomStream:
        return RandomStream(bytes([tag % 256]) * 32)

    return factory


@pytest.fixture
def rng(make_rng):
    return make_rng(0xA5)
