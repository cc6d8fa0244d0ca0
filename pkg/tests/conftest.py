import pytest

from mahonian import enumeration


def iter_corpus(max_size, min_size=1):
    """Every word of every rearrangement class with size in the bounds."""
    for spec in enumeration.multiset_profiles(max_size, min_size):
        yield from enumeration.enumerate_words(spec)


@pytest.fixture(scope="session")
def corpus5():
    """All 633 words of total size <= 5 (fast exhaustive checks)."""
    return list(iter_corpus(5))


@pytest.fixture(scope="session")
def multisets5():
    return enumeration.multiset_profiles(5)
