import pytest
from hypothesis import settings

from confork import parse_distribution, parse_relation

from support import load_fixture

settings.register_profile("suite", max_examples=60, deadline=None)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def fork_table():
    """Distribution where (A, B, C) is a fork but B is not between A and C."""
    return parse_distribution(load_fixture("fork_not_betweenness.json"))


@pytest.fixture(scope="session")
def between_table():
    """Distribution where B is between A and C but (A, B, C) is not a fork."""
    return parse_distribution(load_fixture("betweenness_not_fork.json"))


@pytest.fixture(scope="session")
def unsolvable_forkness():
    """Regular forkness on four elements whose difference system is infeasible."""
    return parse_relation(load_fixture("unsolvable_forkness.json"))


@pytest.fixture(scope="session")
def full_relation():
    def _load(n: int):
        return parse_relation(load_fixture(f"full_relation_{n}.json"))

    return _load
