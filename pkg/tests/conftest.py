import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from hdvass.core import make_vass  # noqa: E402
from hdvass.textio import parse_2cm  # noqa: E402

M_HALT = """2cm halt
state s initial
state t
state h halting
trans s inc1 t
trans t ztest2 h
"""

M_LOOP = """2cm loop
state s initial
state h halting
trans s inc1 s
"""

# two increments, then count counter 1 back down to zero and halt
M_COUNT = """2cm count
state s initial
state t
state u
state h halting
trans s inc1 t
trans t inc1 u
trans u dec1 u
trans u ztest1 h
"""


@pytest.fixture
def m_halt():
    return parse_2cm(M_HALT)


@pytest.fixture
def m_loop():
    return parse_2cm(M_LOOP)


@pytest.fixture
def m_count():
    return parse_2cm(M_COUNT)


@pytest.fixture
def a_selfloop():
    return make_vass("loop", 1, "a", ["q0"], "q0", ["q0"], [("q0", "a", 1, "q0")])


@pytest.fixture
def eps_pump():
    return make_vass("pump", 1, "a", ["q0", "q1"], "q0", ["q1"],
                     [("q0", "@eps", 1, "q0"), ("q0", "a", -1, "q1")])
