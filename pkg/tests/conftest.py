import pytest
from hypothesis import strategies as st

from banachforge import Alphabet, GroupSpec, Letter, WPOracle, free_reduce


@pytest.fixture(scope="session")
def a1():
    return Alphabet(1)


@pytest.fixture(scope="session")
def a2():
    return Alphabet(2)


@pytest.fixture(scope="session")
def a3():
    return Alphabet(3)


@pytest.fixture(scope="session")
def z2_oracle():
    return WPOracle(GroupSpec.from_dict({"kind": "free_abelian", "rank": 2}))


@pytest.fixture(scope="session")
def free2_oracle():
    return WPOracle(GroupSpec.from_dict({"kind": "free", "rank": 2}))


@pytest.fixture(scope="session")
def cyclic3_oracle():
    return WPOracle(GroupSpec.from_dict({"kind": "finite_cyclic", "order": 3, "images": [1, 1]}))


@pytest.fixture(scope="session")
def perm_oracle():
    return WPOracle(
        GroupSpec.from_dict(
            {"kind": "permutation", "points": 4, "generators": [[1, 0, 2, 3], [0, 2, 1, 3]]}
        )
    )


def words(rank: int = 2, max_len: int = 12):
    """Hypothesis strategy: arbitrary reduced words of the given rank."""
    letter = st.tuples(st.integers(0, rank - 1), st.sampled_from((1, -1))).map(
        lambda t: Letter(*t)
    )
    return st.lists(letter, max_size=max_len).map(free_reduce)
