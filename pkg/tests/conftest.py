import pytest

from treesweep.forest import enumerate_trees


@pytest.fixture(scope="session")
def trees_up_to_8():
    return [t for n in range(1, 9) for t in enumerate_trees(n)]
