import os
import random

import pytest
from hypothesis import HealthCheck, settings

SEED = int(os.environ.get("ASTK_SEED", "20240611"))

settings.register_profile(
    "astk", max_examples=40, deadline=None, database=None, print_blob=True,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("astk")


def pytest_configure(config):
    # hypothesis draws from ASTK_SEED unless --hypothesis-seed is given
    if getattr(config.option, "hypothesis_seed", None) is None:
        config.option.hypothesis_seed = SEED


@pytest.fixture
def rng():
    return random.Random(SEED)
