from __future__ import annotations

import pytest

from raneylab import fixtures
from raneylab.birkhoff import enumerate_posets, upset_lattice


@pytest.fixture
def C2():
    return fixtures.C2()


@pytest.fixture
def C3():
    return fixtures.C3()


@pytest.fixture
def B2():
    return fixtures.B2()


@pytest.fixture
def L5():
    return fixtures.L5()


def small_frames(max_poset: int = 4):
    """Upset lattices of every poset with at most ``max_poset`` points."""
    return [upset_lattice(P) for n in range(max_poset + 1) for P in enumerate_posets(n)]


def el(L, *labels):
    """Element indices from labels; a single label gives an int."""
    idx = [L.index(s) for s in labels]
    return idx[0] if len(idx) == 1 else idx


def mask(L, *labels):
    return sum(1 << L.index(s) for s in labels)
