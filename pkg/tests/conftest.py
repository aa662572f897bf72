import numpy as np
import pytest
from hypothesis import HealthCheck, settings

# keep the whole suite deterministic and tolerant of slow SVD-heavy examples
settings.register_profile(
    "suite",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
