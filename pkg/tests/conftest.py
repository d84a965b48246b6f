import pytest

from cutsort import oracle


_TABLE_CACHE: dict[int, oracle.DistanceTable] = {}


def exact_table(n: int) -> oracle.DistanceTable:
    """Exact distance table, built once per session and cached."""
    if n not in _TABLE_CACHE:
        _TABLE_CACHE[n] = oracle.build_table(n)
    return _TABLE_CACHE[n]


@pytest.fixture(scope="session")
def tables():
    return exact_table
