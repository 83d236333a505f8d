import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from dghopf.corpus import exterior_hopf, idempotent_bialgebra, interval_algebra
from dghopf.dg_structures import ground_field
from dghopf.graded_core import GradedMap, GradedSpace


@pytest.fixture(scope="session")
def Lx():
    return exterior_hopf(("x",))


@pytest.fixture(scope="session")
def Lxy():
    return exterior_hopf(("x", "y"))


@pytest.fixture(scope="session")
def kk():
    return ground_field()


@pytest.fixture(scope="session")
def interval():
    return interval_algebra()


@pytest.fixture(scope="session")
def monoid():
    return idempotent_bialgebra()


def random_space(rng, name, max_dim=3, degrees=(-1, 0, 1, 2)):
    n = rng.randint(1, max_dim)
    basis = [(f"{name}{i}", rng.choice(degrees)) for i in range(n)]
    return GradedSpace(name, basis)


def random_map(rng, V, W, degree, density=0.7, lo=-3, hi=3):
    cols = {}
    for j in range(V.dim):
        for i in range(W.dim):
            if W.degs[i] == V.degs[j] + degree and rng.random() < density:
                c = Fraction(rng.randint(lo, hi))
                if c:
                    cols.setdefault(j, {})[i] = c
    return GradedMap(V, W, degree, cols)


def random_differential(rng, V):
    """A random degree 1 map with d∘d = 0: no basis vector is both hit and mapped."""
    targets, cols = set(), {}
    order = list(range(V.dim))
    rng.shuffle(order)
    used_src = set()
    for j in order:
        if j in targets:
            continue
        for i in order:
            if i != j and V.degs[i] == V.degs[j] + 1 and i not in used_src and rng.random() < 0.6:
                cols.setdefault(j, {})[i] = Fraction(rng.choice([-2, -1, 1, 2]))
                targets.add(i)
                used_src.add(j)
    return GradedMap(V, V, 1, {j: c for j, c in cols.items() if j not in targets})


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
