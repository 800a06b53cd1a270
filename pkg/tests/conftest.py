import numpy as np
import pytest
from hypothesis import strategies as st

from bundlegsp.bundle import (
    PartitionOfUnity,
    VoltageAssignment,
    automorphisms,
    build_bundle,
    cylinder_bundle,
    glued_bundle,
    mobius_bundle,
    pentane_bundle,
)
from bundlegsp.graphs import Graph

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def mobius():
    return mobius_bundle()


@pytest.fixture(scope="session")
def cylinder():
    return cylinder_bundle()


@pytest.fixture(scope="session")
def glued():
    return glued_bundle()


@pytest.fixture(scope="session")
def pentane():
    return pentane_bundle()


def random_partition(cover, rng):
    """Random positive weights on each set, normalized per vertex."""
    w = np.zeros((len(cover), cover.base.n))
    for k, s in enumerate(cover.sets):
        w[k, list(s)] = rng.uniform(0.05, 1.0, len(s))
    w /= w.sum(0)
    return PartitionOfUnity(cover, w)


@st.composite
def graphs(draw, min_n=1, max_n=8, triangle_free=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = []
    adj = set()
    for (i, j), keep in zip(pairs, mask):
        if not keep:
            continue
        if triangle_free and any((min(i, k), max(i, k)) in adj and (min(j, k), max(j, k)) in adj for k in range(n)):
            continue
        edges.append((i, j))
        adj.add((i, j))
    return Graph(n, tuple(edges))


@st.composite
def trees(draw, max_n=10):
    n = draw(st.integers(1, max_n))
    parents = [draw(st.integers(0, v - 1)) for v in range(1, n)]
    return Graph(n, tuple((p, v) for v, p in enumerate(parents, start=1)))


@st.composite
def random_voltages(draw, base, fiber):
    auts = automorphisms(fiber)
    table = {}
    for u, v in base.edges:
        table[(u, v)] = auts[draw(st.integers(0, len(auts) - 1))]
    return VoltageAssignment(base, fiber, table)


@st.composite
def bundles(draw, max_base=12, max_fiber=6, triangle_free=True, base_strategy=None):
    base = draw(base_strategy if base_strategy is not None else graphs(1, max_base, triangle_free))
    fiber = draw(graphs(1, max_fiber))
    return build_bundle(base, fiber, draw(random_voltages(base, fiber)))
