from __future__ import annotations

import pytest

from raneylab import fixtures
from raneylab.birkhoff import are_isomorphic
from raneylab.errors import NotATopology, NotT0, UnknownPoint
from raneylab.raney import unique_extension
from raneylab.spaces import (
    FinSpace,
    V3,
    chartd_conditions,
    discrete,
    doubled_sierpinski,
    indiscrete,
    is_sober_space,
    is_T0,
    is_T1,
    is_TD,
    neighborhood_filter,
    omega,
    omega_R,
    phi,
    point,
    psi,
    pt_round_trip,
    saturated,
    sierpinski,
    specialization,
)


def iso(L, M) -> bool:
    return are_isomorphic(L.as_poset(), M.as_poset())


def test_topology_is_validated():
    with pytest.raises(NotATopology):
        FinSpace(2, [0b00, 0b01, 0b10])  # union {0,1} missing


def test_specialization_examples():
    S = specialization(sierpinski())
    assert S.leq(0, 1) and not S.leq(1, 0)
    D = specialization(discrete(2))
    assert not D.leq(0, 1) and not D.leq(1, 0)
    I = specialization(indiscrete(2))
    assert I.leq(0, 1) and I.leq(1, 0) and not I.is_order


def test_omega_and_saturated():
    assert iso(omega(sierpinski()), fixtures.C3())
    assert iso(omega(V3()), fixtures.L5())
    assert iso(saturated(discrete(2)), fixtures.B2())


def test_omega_r_matches_unique_extension():
    for X, L in ((sierpinski(), fixtures.C3()), (discrete(2), fixtures.B2()), (V3(), fixtures.L5())):
        R = omega_R(X)
        assert iso(R.base, L)
        assert R == unique_extension(R.base)


def test_neighbourhood_filters():
    X = sierpinski()
    L = X.omega
    assert neighborhood_filter(X, 1).carrier == L.up[X.open_index[0b10]]
    assert neighborhood_filter(X, 0).carrier == 1 << L.top
    D = discrete(2)
    assert neighborhood_filter(D, 0).carrier == D.omega.up[D.open_index[0b01]]
    with pytest.raises(UnknownPoint):
        neighborhood_filter(X, 5)


def test_axiom_examples():
    X = sierpinski()
    assert (is_T0(X), is_TD(X), is_T1(X), is_sober_space(X)) == (True, True, False, True)
    D = discrete(2)
    assert all(f(D) for f in (is_T0, is_TD, is_T1, is_sober_space))
    assert not is_T0(indiscrete(2))


def test_psi_examples():
    assert psi(sierpinski()).homeomorphism
    rep = psi(indiscrete(2))
    assert not rep.injective and rep.mapping[0] == rep.mapping[1]
    assert psi(point()).mapping == (0,)
    assert not psi(doubled_sierpinski()).injective


def test_phi_examples():
    for L in (fixtures.C3(), fixtures.B2(), fixtures.C2()):
        assert phi(unique_extension(L)).isomorphism


def test_chartd_refuses_non_t0():
    with pytest.raises(NotT0):
        chartd_conditions(indiscrete(2))
    assert all(chartd_conditions(V3()).values())


def test_pt_round_trip():
    assert pt_round_trip(V3()) is not None
    assert pt_round_trip(indiscrete(2)) is None
