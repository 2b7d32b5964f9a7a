from __future__ import annotations

import pytest

from conftest import el, mask, small_frames
from raneylab.order import primes
from raneylab.sublocales import (
    all_sublocales,
    boolean_s,
    closed_s,
    closure_s,
    difference_s,
    fitted,
    fitting_s,
    generate_sublocale,
    is_D_sublocale,
    is_exact_sublocale,
    is_sublocale,
    join_s,
    joins_of_closed,
    make_sublocale,
    meet_s,
    minimal_sublocale_oracle,
    open_s,
    raw_sublocales,
    spatial_oracle,
    supplement_s,
    trivial,
    whole,
)


def carrier_labels(S):
    return set(S.labels())


def test_is_sublocale_examples(C3):
    assert is_sublocale(C3, mask(C3, "1", "0"))
    assert is_sublocale(C3, mask(C3, "1", "a"))
    assert not is_sublocale(C3, mask(C3, "0", "a"))


def test_generate_sublocale_examples(C3, L5):
    assert carrier_labels(generate_sublocale(C3, mask(C3, "0"))) == {"0", "1"}
    got = generate_sublocale(L5, mask(L5, "a"))
    assert got.carrier == boolean_s(L5, el(L5, "a")).carrier
    assert got.carrier == minimal_sublocale_oracle(L5, mask(L5, "a"))
    assert carrier_labels(generate_sublocale(L5, 0)) == {"1"}


def test_open_closed_boolean_examples(C3):
    a, zero = el(C3, "a", "0")
    assert carrier_labels(open_s(C3, a)) == {"0", "1"}
    assert carrier_labels(closed_s(C3, a)) == {"a", "1"}
    assert carrier_labels(boolean_s(C3, zero)) == {"0", "1"}


def test_all_sublocales_counts(C2, C3, L5):
    assert len(all_sublocales(C2)) == 2
    assert {frozenset(S.labels()) for S in all_sublocales(C3)} == {
        frozenset({"1"}), frozenset({"0", "1"}), frozenset({"a", "1"}), frozenset({"0", "a", "1"})
    }
    assert len(all_sublocales(L5)) == 8


def test_join_meet_difference_supplement(C3):
    o = make_sublocale(C3, mask(C3, "0", "1"))
    c = make_sublocale(C3, mask(C3, "a", "1"))
    assert join_s(o, c).carrier == C3.full
    assert carrier_labels(meet_s(o, c)) == {"1"}
    assert supplement_s(open_s(C3, el(C3, "a"))).carrier == closed_s(C3, el(C3, "a")).carrier
    assert difference_s(whole(C3), o).carrier == c.carrier


def test_closure_and_fitting(C3):
    assert carrier_labels(closure_s(trivial(C3))) == {"1"}
    assert closure_s(make_sublocale(C3, mask(C3, "0", "1"))).carrier == C3.full
    assert fitting_s(closed_s(C3, el(C3, "a"))).carrier == C3.full


def test_closed_and_fitted_families(C3):
    sc = {frozenset(S.labels()) for S in joins_of_closed(C3)}
    assert sc == {frozenset({"0", "a", "1"}), frozenset({"a", "1"}), frozenset({"1"})}
    so = {frozenset(S.labels()) for S in fitted(C3)}
    assert so == {frozenset({"0", "a", "1"}), frozenset({"0", "1"}), frozenset({"1"})}


def test_exact_and_d_examples(C3, B2, L5):
    for S in all_sublocales(C3):
        assert is_exact_sublocale(C3, S)
    assert is_exact_sublocale(B2, boolean_s(B2, el(B2, "0")))
    assert is_exact_sublocale(L5, closed_s(L5, el(L5, "m")))
    assert is_D_sublocale(C3, make_sublocale(C3, mask(C3, "a", "1")))
    assert is_D_sublocale(C3, trivial(C3))
    assert is_D_sublocale(L5, whole(L5))


def test_spatial_oracle_sizes(C2, C3, L5):
    for L, k in ((C2, 1), (C3, 2), (L5, 3)):
        oracle = spatial_oracle(L)
        assert len(oracle) == 2 ** k
        assert set(oracle.values()) == {frozenset(s) for s in _powerset(primes(L))}


def _powerset(xs):
    xs = sorted(xs)
    return [[x for i, x in enumerate(xs) if q >> i & 1] for q in range(1 << len(xs))]


@pytest.mark.parametrize("L", [L for L in small_frames(3)], ids=lambda L: f"n{L.n}")
def test_enumeration_matches_raw_filter(L):
    assert {S.carrier for S in all_sublocales(L)} == set(raw_sublocales(L))
