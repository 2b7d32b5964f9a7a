"""Randomized algebraic laws on small posets, frames and topologies."""

from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from raneylab.birkhoff import are_isomorphic, canonical_form, poset_of_primes, upset_lattice
from raneylab.filters import all_filters, filter_frame, filter_heyting_table
from raneylab.formats import lattice_to_text, parse_text, space_to_text
from raneylab.order import FinPoset, bits, codifference, heyting_table
from raneylab.spaces import FinSpace, is_T0, psi, saturated_sets, specialization
from raneylab.sublocales import all_sublocales, generate_sublocale, is_sublocale


@st.composite
def posets(draw, max_n: int = 5):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    rows = [1 << i for i in range(n)]
    for i, j in chosen:
        rows[i] |= 1 << j
    for k in range(n):
        for i in range(n):
            if rows[i] >> k & 1:
                rows[i] |= rows[k]
    # relabel so the natural order i < j is not baked in
    perm = draw(st.permutations(range(n)))
    up = [0] * n
    for i in range(n):
        up[perm[i]] = sum(1 << perm[j] for j in bits(rows[i]))
    return FinPoset(up)


@st.composite
def spaces(draw, max_n: int = 4):
    n = draw(st.integers(1, max_n))
    seeds = draw(st.lists(st.integers(0, (1 << n) - 1), max_size=5))
    opens = {0, (1 << n) - 1, *seeds}
    while True:
        new = {a | b for a in opens for b in opens} | {a & b for a in opens for b in opens}
        if new <= opens:
            break
        opens |= new
    return FinSpace(n, opens)


frames = posets(4).map(upset_lattice)


@given(posets())
def test_birkhoff_round_trip(P):
    assert are_isomorphic(poset_of_primes(upset_lattice(P)), P)


@given(posets(), st.data())
def test_canonical_form_ignores_labels(P, data):
    perm = data.draw(st.permutations(range(P.n)))
    up = [0] * P.n
    for i in range(P.n):
        up[perm[i]] = sum(1 << perm[j] for j in bits(P.up[i]))
    assert canonical_form(FinPoset(up)) == canonical_form(P)


@given(frames)
def test_residuation_laws(L):
    imp = heyting_table(L)
    for a in range(L.n):
        for b in range(L.n):
            d = codifference(L, a, b)
            for c in range(L.n):
                assert L.leq(c, imp[a][b]) == L.leq(L.meet[c][a], b)
                assert L.leq(d, c) == L.leq(a, L.join[b][c])


@given(frames, st.data())
def test_generated_sublocale_is_least(L, data):
    X = data.draw(st.integers(0, (1 << L.n) - 1))
    S = generate_sublocale(L, X).carrier
    assert is_sublocale(L, S) and not X & ~S
    for T in all_sublocales(L):
        if not X & ~T.carrier:
            assert not S & ~T.carrier


@given(frames)
def test_filter_frame_is_heyting(L):
    ff = filter_frame(L)
    lat = ff.lattice
    imp = filter_heyting_table(L)
    assert len(all_filters(L)) == L.n
    for a in range(lat.n):
        for b in range(lat.n):
            for c in range(lat.n):
                assert lat.leq(c, imp[a][b]) == lat.leq(lat.meet[c][a], b)


@given(frames)
def test_lattice_text_round_trip(L):
    M = parse_text(lattice_to_text(L)).value
    assert M.covers() == L.covers() and M.labels == L.labels


@settings(max_examples=60)
@given(spaces())
def test_space_laws(X):
    pre = specialization(X)
    assert pre.is_order == is_T0(X)
    for S in saturated_sets(X):
        for x in bits(S):
            assert not X.up(x) & ~S
    assert psi(X).homeomorphism == is_T0(X)
    assert parse_text(space_to_text(X)).value == X
