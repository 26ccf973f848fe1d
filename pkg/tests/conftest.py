import os
import random

import pytest


@pytest.fixture
def rng():
    """Deterministic RNG for randomized suites; seed from WALLMAN_LAB_SEED."""
    seed = int(os.environ.get("WALLMAN_LAB_SEED", "0"))
    return random.Random(seed)
