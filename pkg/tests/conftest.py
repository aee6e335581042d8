import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from nplace.algebra import cyclic_add, left_zero, one_element, right_zero
from nplace.census import associative_tables, make_algebra
from nplace.core_types import Carrier, PlaceFunction

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def lz():
    return left_zero()


@pytest.fixture
def rz():
    return right_zero()


@pytest.fixture
def z2():
    return cyclic_add()


@pytest.fixture
def one():
    return one_element()


def order2_algebras():
    """All 64 pairs of associative tables on a two-element set."""
    tables = associative_tables(2)
    return [make_algebra((t1, t2)) for t1 in tables for t2 in tables]


@st.composite
def partial_functions(draw, size=2, n=2):
    carrier = Carrier(tuple(range(size)))
    graph = {}
    for p in carrier.tuples(n):
        v = draw(st.one_of(st.none(), st.integers(0, size - 1)))
        if v is not None:
            graph[p] = v
    return PlaceFunction(n, carrier, graph)


@st.composite
def small_algebras(draw, max_order=3, max_n=3):
    order = draw(st.integers(1, max_order))
    n = draw(st.integers(1, max_n))
    tables = associative_tables(order)
    picks = draw(st.lists(st.integers(0, len(tables) - 1), min_size=n, max_size=n))
    return make_algebra(tuple(tables[k] for k in picks))


def seeded(seed=0):
    return random.Random(seed)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
