from __future__ import annotations

import pytest

from raneylab import fixtures
from raneylab.birkhoff import (
    are_isomorphic,
    canonical_form,
    canonical_hash,
    count_posets,
    enumerate_posets,
    oracle_classes,
    oracle_key,
    poset_of_primes,
    prime_dual,
    upset_lattice,
)
from raneylab.errors import SizeCap
from raneylab.order import FinPoset, is_order_isomorphism


def same_lattice(L, M) -> bool:
    return are_isomorphic(L.as_poset(), M.as_poset())


def test_upset_lattice_examples():
    assert same_lattice(upset_lattice(fixtures.chain_poset(1)), fixtures.C2())
    assert same_lattice(upset_lattice(fixtures.chain_poset(2)), fixtures.C3())
    assert same_lattice(upset_lattice(fixtures.antichain_poset(2)), fixtures.B2())
    assert same_lattice(upset_lattice(fixtures.poset_V()), fixtures.L5())


def test_upset_lattice_respects_cap():
    with pytest.raises(SizeCap):
        upset_lattice(fixtures.antichain_poset(6), cap=32)


def test_poset_of_primes_examples():
    assert are_isomorphic(poset_of_primes(fixtures.C3()), fixtures.chain_poset(2))
    assert are_isomorphic(poset_of_primes(fixtures.B2()), fixtures.antichain_poset(2))
    assert are_isomorphic(poset_of_primes(fixtures.L5()), fixtures.poset_V())


def test_prime_dual_certificate():
    L = fixtures.L5()
    d = prime_dual(L)
    assert is_order_isomorphism(L, d.lattice, d.iso)


@pytest.mark.parametrize("n,count", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 16), (5, 63)])
def test_enumeration_counts(n, count):
    assert count_posets(n) == count


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_enumeration_matches_brute_force(n):
    keys = {oracle_key(P) for P in enumerate_posets(n)}
    assert keys == oracle_classes(n)


def test_enumeration_is_deterministic():
    first = [canonical_hash(P) for P in enumerate_posets(4)]
    assert first == [canonical_hash(P) for P in enumerate_posets(4)]


def test_enumeration_cap():
    with pytest.raises(SizeCap):
        list(enumerate_posets(9, cap=9))


def test_canonical_form_examples():
    chain = fixtures.chain_poset(2)
    relabeled = FinPoset.from_covers(2, [(1, 0)])
    assert canonical_form(relabeled) == canonical_form(chain)
    V = fixtures.poset_V()
    swapped = FinPoset.from_covers(3, [(0, 2), (0, 1)])
    assert canonical_form(V) == canonical_form(swapped)
    assert canonical_form(fixtures.chain_poset(3)) != canonical_form(V)
