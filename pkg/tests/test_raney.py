from __future__ import annotations

import pytest

from conftest import el
from raneylab import fixtures
from raneylab.errors import MissingPrincipal, NotSubfit
from raneylab.filters import all_filters, cp_filters, exact_filters, principal, regular_filters
from raneylab.raney import (
    axioms,
    closure_operator_violations,
    enumerate_raney,
    frame_map,
    frame_maps,
    identity_map,
    is_compact,
    is_D_morphism,
    is_dense,
    is_exact_map,
    lift_frame_map,
    maxpt_space,
    pt_space,
    ptD_space,
    sobrification,
    spectrum,
    t1_reflection,
    td_reflection,
    unique_extension,
    validate_raney,
)
from raneylab.spaces import discrete, homeomorphic, point, sierpinski


def test_validate_examples(C3, B2):
    R = validate_raney(C3, all_filters(C3))
    assert len(R) == 3
    with pytest.raises(MissingPrincipal) as exc:
        validate_raney(C3, [principal(C3, el(C3, "0")), principal(C3, el(C3, "1"))])
    assert exc.value.element == el(C3, "a")
    S = validate_raney(B2, all_filters(B2))
    assert S.coframe.is_boolean


@pytest.mark.parametrize("name", ["C3", "B2", "L5"])
def test_exactly_one_extension(name, request):
    L = request.getfixturevalue(name)
    assert len(enumerate_raney(L)) == 1
    assert closure_operator_violations(unique_extension(L)) == []


def test_density_and_compactness(C3, B2):
    R = unique_extension(C3)
    assert is_compact(R, exact_filters(C3))
    # the empty intersection is ↑0, so the CP filters already generate every filter
    assert is_dense(R, cp_filters(C3))
    assert is_dense(unique_extension(B2), regular_filters(B2))


def test_axiom_examples(C3, B2, L5):
    assert axioms(unique_extension(C3)) == {"sober": True, "td": True, "t1": False, "spatial": True}
    assert all(axioms(unique_extension(B2)).values())
    assert axioms(unique_extension(L5))["t1"] is False


@pytest.mark.parametrize("name", ["C3", "B2", "L5"])
def test_reflections_are_identities(name, request):
    R = unique_extension(request.getfixturevalue(name))
    S, sigma = sobrification(R)
    assert S == R and sigma == tuple(range(len(R)))
    T, delta = td_reflection(R)
    assert T == R and delta == tuple(range(len(R)))


def test_t1_reflection(C3, B2):
    R = unique_extension(B2)
    T, m = t1_reflection(R)
    assert T == R and m == tuple(range(len(R)))
    with pytest.raises(NotSubfit):
        t1_reflection(unique_extension(C3))


def test_spectra_examples(C2, C3, B2):
    assert homeomorphic(spectrum(unique_extension(C3)), sierpinski())
    assert homeomorphic(spectrum(unique_extension(B2)), discrete(2))
    assert homeomorphic(spectrum(unique_extension(C2)), point())
    assert homeomorphic(pt_space(C3), sierpinski())
    assert ptD_space(C3) == pt_space(C3)
    maxpt = maxpt_space(C3)
    assert maxpt.n == 1 and maxpt.labels == ("a",)


def test_lifting_examples(C2, C3):
    embed = frame_map(C2, C3, [el(C3, "0"), el(C3, "1")])
    assert lift_frame_map(embed, unique_extension(C2), unique_extension(C3)).exists
    collapse = frame_map(C3, C2, [el(C2, "0"), el(C2, "1"), el(C2, "1")])
    assert lift_frame_map(collapse, unique_extension(C3), unique_extension(C2)).exists
    assert is_exact_map(collapse)


def test_d_morphism_examples(C2, B2):
    f = frame_map(C2, B2, [el(B2, "0"), el(B2, "1")])
    assert is_D_morphism(f)
    for L in (C2, B2, fixtures.L5()):
        ident = identity_map(L)
        assert is_exact_map(ident) and is_D_morphism(ident)


def test_frame_map_counts(C2, C3, B2):
    assert len(frame_maps(C2, C3)) == 1
    assert len(frame_maps(C3, C2)) == 2
    assert len(frame_maps(B2, B2)) == 4
