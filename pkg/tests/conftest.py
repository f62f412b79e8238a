import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dimspect import CarpetSpec


@pytest.fixture
def worked_carpet() -> CarpetSpec:
    """The 2x3 carpet with digits (0,0), (0,2), (1,1): columns hold 2 and 1 cells."""
    return CarpetSpec.create(2, 3, [(0, 0), (0, 2), (1, 1)])


def random_carpet(rnd: random.Random, max_m: int = 3, max_n: int = 6) -> CarpetSpec:
    """A uniformly random valid carpet spec with at least two digits."""
    m = rnd.randint(2, max_m)
    n = rnd.randint(m + 1, max_n)
    cells = [(p, q) for p in range(m) for q in range(n)]
    count = rnd.randint(2, len(cells))
    return CarpetSpec.create(m, n, rnd.sample(cells, count))
