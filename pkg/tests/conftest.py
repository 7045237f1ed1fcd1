import sys
from pathlib import Path

import pytest

from scatterpoly import build_field

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def f9():
    return build_field(3, 1, 2)


@pytest.fixture(scope="session")
def f27():
    return build_field(3, 1, 3)


@pytest.fixture(scope="session")
def f81():
    return build_field(3, 1, 4)


@pytest.fixture(scope="session")
def f243():
    return build_field(3, 1, 5)


@pytest.fixture(scope="session")
def f125():
    return build_field(5, 1, 3)


@pytest.fixture(scope="session")
def f3125():
    return build_field(5, 1, 5)


@pytest.fixture(scope="session")
def f81_tower():
    """F_81 as a degree-2 extension of F_9 (m=2, n=2)."""
    return build_field(3, 2, 2)
