"""
Shared categories for the category tests.
"""

import pytest

from src.categories.builders import cospan, parallel_pair, total_order


@pytest.fixture
def pair_category():
    return parallel_pair()


@pytest.fixture
def chain():
    """The total order 0 < 1 < 2."""
    return total_order(["0", "1", "2"])


@pytest.fixture
def corner():
    return cospan()
