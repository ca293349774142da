import os
import tempfile

os.environ.setdefault("NETPART_LOG_DIR", os.path.join(tempfile.gettempdir(), "netpart-test-logs"))

import pytest

from tests.helpers import block, problem


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long acceptance sweeps")


@pytest.fixture
def served_pair():
    """Provider and leader in block 1, demand only in block 2, one switch."""
    return problem([block(1, [(0.0, 10.0, True)]), block(2, demands=[4.0])], [(1, 2)])


@pytest.fixture
def ring5():
    """5-block ring fed from block 1; block 3 needs 6 units but a single switch carries only 4.

    Only the closed ring serves block 3, so the radial optimum sheds it
    (objective 0.9) while the relaxation without radiality reaches 0.6.
    """
    blocks = [block(1, [(0.0, 20.0, True)]), block(2), block(3, demands=[6.0]), block(4), block(5)]
    return problem(blocks, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)], r_max=4.0, kappa=1)


@pytest.fixture
def tiny_triangle():
    """Triangle with leaders in two blocks; small enough for exhaustive assignment checks."""
    blocks = [block(1, [(0.0, 6.0, True, 1.0)], [2.0]), block(2, demands=[3.0]),
              block(3, [(0.0, 3.0, True, 0.5)], [1.0])]
    return problem(blocks, [(1, 2), (2, 3), (1, 3)], r_max=4.0, kappa=1)
