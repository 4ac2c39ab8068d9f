import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from flows.models import Rectangle  # noqa: E402
from leafspace.fixtures import random_leaf_space  # noqa: E402

SEED = 20240101


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture(scope="session")
def random_graphs():
    """
    200 seeded valid leaf spaces with at most 12 edges.
    """
    gen = np.random.default_rng(SEED)
    return [random_leaf_space(gen, 12) for _ in range(200)]


@pytest.fixture(scope="session")
def small_random_graphs():
    gen = np.random.default_rng(SEED + 1)
    return [random_leaf_space(gen, 7) for _ in range(200)]


@pytest.fixture
def reeb_rect():
    return Rectangle(xMin=-2.0, xMax=1.0, yMin=-1.0, yMax=1.0)
