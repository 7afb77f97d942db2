import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from commands.utils import poset as po  # noqa: E402
from hypothesis import strategies as st  # noqa: E402


DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')
GOLDEN_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'golden')

small_posets = st.integers(0, 4).flatmap(lambda n: st.sampled_from(po.all_posets(n)))


def data_path(name):
    return os.path.join(DATA_DIR, name)

def golden(name):
    with open(os.path.join(GOLDEN_DIR, name), encoding='utf-8') as f:
        return f.read()


@pytest.fixture
def chain2():
    return po.chain(2)

@pytest.fixture
def chain3():
    return po.chain(3)

@pytest.fixture
def antichain2():
    return po.antichain(2)

@pytest.fixture
def spine():
    return po.spine()

@pytest.fixture
def sierpinski():
    """Two points, the open point 'o' below the closed point 'c'."""
    return po.from_covers(['o', 'c'], [('o', 'c')])
