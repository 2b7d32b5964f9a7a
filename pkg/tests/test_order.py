from __future__ import annotations

import itertools

import pytest

from conftest import el, mask, small_frames
from raneylab import fixtures
from raneylab.errors import NotACoframe, NotAFrame, NotALattice, NotAPartialOrder
from raneylab.order import (
    FinPoset,
    codifference,
    covered_primes,
    exactness_violations,
    heyting,
    is_distributive,
    is_exact_meet,
    is_strongly_exact_meet,
    is_subfit,
    maximal_primes,
    meet_irreducibles,
    primes,
    validate_lattice,
)


def labels(L, elems):
    return {L.labels[i] for i in elems}


def test_chain_arithmetic(C3):
    a, one, zero = el(C3, "a", "1", "0")
    assert C3.meet[a][one] == a
    assert C3.join[zero][a] == a


def test_b2_bounds(B2):
    a, b = el(B2, "a", "b")
    assert B2.meet[a][b] == el(B2, "0")
    assert B2.join[a][b] == el(B2, "1")


def test_pentagon_is_a_lattice_but_not_distributive():
    N5 = fixtures.N5()
    assert N5.n == 5
    assert not is_distributive(N5)
    with pytest.raises(NotAFrame):
        heyting(N5, 0, 1)


def test_distributivity_flags(C3, B2):
    assert is_distributive(C3)
    assert is_distributive(B2)
    assert not is_distributive(fixtures.M3())


def test_not_a_lattice_names_a_pair():
    # two maximal elements, no top
    P = FinPoset.from_covers(3, [(0, 1), (0, 2)])
    with pytest.raises(NotALattice) as exc:
        validate_lattice(P)
    assert set(exc.value.pair) == {1, 2}


def test_cycles_are_rejected():
    with pytest.raises(NotAPartialOrder):
        FinPoset([0b11, 0b11])


def test_heyting_examples(C3, L5):
    assert heyting(C3, el(C3, "a"), el(C3, "0")) == el(C3, "0")
    assert heyting(L5, el(L5, "a"), el(L5, "0")) == el(L5, "b")
    for L in (C3, L5):
        for a in range(L.n):
            assert heyting(L, a, a) == L.top


def test_codifference_examples(B2, C3):
    assert codifference(B2, el(B2, "a"), el(B2, "b")) == el(B2, "a")
    assert codifference(C3, el(C3, "a"), el(C3, "a")) == el(C3, "0")
    assert codifference(C3, el(C3, "1"), el(C3, "a")) == el(C3, "1")
    with pytest.raises(NotACoframe):
        codifference(fixtures.M3(), 1, 2)


def test_primes_and_covered_primes(C3, B2, L5):
    assert labels(C3, primes(C3)) == {"0", "a"}
    assert labels(B2, primes(B2)) == {"a", "b"}
    assert labels(L5, primes(L5)) == {"a", "b", "m"}
    for L in (C3, B2, L5):
        assert covered_primes(L) == primes(L)


def test_subfit_examples(C3, B2, L5):
    assert not is_subfit(C3)
    assert is_subfit(B2)
    assert not is_subfit(L5)


def test_exact_meet_examples(C3, B2, L5):
    assert is_exact_meet(C3, mask(C3, "a", "1"))
    assert is_strongly_exact_meet(B2, mask(B2, "a", "b"))
    assert is_exact_meet(L5, mask(L5, "a", "b", "m"))


def test_maximal_primes(C3, B2, L5):
    assert labels(C3, maximal_primes(C3)) == {"a"}
    assert labels(B2, maximal_primes(B2)) == {"a", "b"}
    assert labels(L5, maximal_primes(L5)) == {"m"}


@pytest.mark.parametrize("L", small_frames(4), ids=lambda L: f"n{L.n}")
def test_finite_frame_invariants(L):
    for a, b, c in itertools.product(range(L.n), repeat=3):
        assert L.leq(c, heyting(L, a, b)) == L.leq(L.meet[c][a], b)
        assert L.leq(codifference(L, a, b), c) == L.leq(a, L.join[b][c])
    assert primes(L) == meet_irreducibles(L)
    assert covered_primes(L) == primes(L)
    assert is_subfit(L) == L.is_boolean
    assert exactness_violations(L) == {"exact": [], "strongly_exact": []}
