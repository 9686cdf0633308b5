import random

import pytest
from hypothesis import strategies as st

from ldstab import Lds, StateSet, fixture, _pykernels

try:
    from ldstab import _ckernels
except ImportError:
    _ckernels = None

BACKENDS = [_pykernels] + ([_ckernels] if _ckernels is not None else [])


@pytest.fixture(params=BACKENDS, ids=lambda mod: mod.__name__.rsplit(".", 1)[-1])
def backend(request):
    return request.param


@pytest.fixture(scope="session")
def e1():
    return fixture("e1")


@pytest.fixture(scope="session")
def e2():
    return fixture("e2")


@pytest.fixture(scope="session")
def e3():
    return fixture("e3")


def random_lds(rng: random.Random, n: int, m: int) -> Lds:
    return Lds.from_lists([[rng.randint(1, n) for _ in range(n)] for _ in range(m)])


def random_subset(rng: random.Random, n: int, p: float = 0.5) -> StateSet:
    return StateSet(n, (x for x in range(1, n + 1) if rng.random() < p))


@st.composite
def lds_strategy(draw, max_n=8, max_m=3):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_m))
    maps = draw(st.lists(st.lists(st.integers(1, n), min_size=n, max_size=n), min_size=m, max_size=m))
    return Lds.from_lists(maps)


@st.composite
def lds_and_set(draw, max_n=8, max_m=3):
    lds = draw(lds_strategy(max_n, max_m))
    members = draw(st.sets(st.integers(1, lds.n)))
    return lds, StateSet(lds.n, members)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
