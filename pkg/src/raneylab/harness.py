"""Check registry, instance enumeration, suite runner and atlas.

Every check is a function of one instance (a frame, a space or a pair of
frames) returning ``None`` on success or a JSON-able witness describing the
first violation.  Reports carry no timings so that identical caps give
byte-identical output.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import config
from .birkhoff import are_isomorphic, canonical_hash, enumerate_posets, prime_dual, upset_lattice, upsets
from .errors import ConfigError, NotSubfit, NotT0, RaneyError, SizeCap
from .filters import (
    all_filters,
    check_filter_tower,
    cp_filters,
    exact_filters,
    filter_frame,
    filter_heyting,
    filter_heyting_table,
    heyting_principal,
    intersection_closure,
    principal,
    regular_filters,
    scott_open_filters,
    strongly_exact_filters,
)
from .formats import lattice_to_json, poset_to_json, space_to_json
from .order import (
    FinLattice,
    FinPoset,
    _np_tables,
    bits,
    codifference,
    covered_primes,
    exact_rows,
    exactness_violations,
    family_table,
    heyting_table,
    is_exact_meet,
    is_strongly_exact_meet,
    is_subfit,
    mask_of,
    maximal_primes,
    popcount,
    primes,
    reduce_over,
)
from .raney import (
    axioms,
    closure_operator_violations,
    completely_join_primes,
    eandse_maps,
    enumerate_raney,
    frame_maps,
    identity_map,
    is_canonical,
    is_compact,
    is_D_morphism,
    is_dense,
    is_exact_map,
    is_spatial,
    is_T1,
    is_TD,
    lift_frame_map,
    maxpt_space,
    pt_points,
    pt_space,
    ptD_points,
    ptD_space,
    scatteredness,
    sobrification,
    spectra_interval,
    spectrum,
    spectrum_bounds_hold,
    spectrum_points,
    t1_reflection,
    td_reflection,
    unique_extension,
    validate_raney,
)
from .spaces import (
    FinSpace,
    alexandrov_space,
    chartd_conditions,
    doubled_sierpinski,
    indiscrete,
    is_scattered_frame,
    is_sober_space,
    is_T0,
    is_T1 as space_is_T1,
    is_TD as space_is_TD,
    omega_R,
    phi,
    psi,
    pt_round_trip,
    saturated_sets,
    specialization,
    t1_powerset_check,
)
from .sublocales import (
    all_sublocales,
    boolean_s,
    closed_s,
    closure_s,
    d_sublocales,
    exact_sublocales,
    fitted,
    fitting_s,
    generate_sublocale,
    is_complemented,
    is_linear,
    is_sublocale,
    minimal_sublocale_oracle,
    open_s,
    sublocale_frame,
)

Witness = dict | None


# --- instances ------------------------------------------------------------------------


@dataclass(frozen=True)
class FrameInstance:
    key: str
    poset: FinPoset
    L: FinLattice

    def describe(self) -> dict:
        return {"key": self.key, "poset": poset_to_json(self.poset), "lattice": lattice_to_json(self.L)}


@dataclass(frozen=True)
class SpaceInstance:
    key: str
    X: FinSpace

    def describe(self) -> dict:
        return {"key": self.key, "space": space_to_json(self.X)}


@dataclass(frozen=True)
class MapInstance:
    key: str
    src: FrameInstance
    dst: FrameInstance

    def describe(self) -> dict:
        return {"key": self.key, "src": lattice_to_json(self.src.L), "dst": lattice_to_json(self.dst.L)}


def frame_instance(P: FinPoset) -> FrameInstance:
    return FrameInstance(f"{P.n}:{canonical_hash(P)}", P, upset_lattice(P))


def frame_instances(caps: config.Caps, sizes: Iterable[int] | None = None) -> list[FrameInstance]:
    """Upset lattices of all posets with at most ``caps.max_poset`` points that fit the element cap."""
    cap = caps.elements
    out = []
    for n in sizes if sizes is not None else range(caps.max_poset + 1):
        for P in enumerate_posets(n, cap=config.HARD_MAX_POSET):
            if len(upsets(P)) <= cap:
                out.append(frame_instance(P))
    return sorted(out, key=lambda inst: inst.key)


def space_instances(caps: config.Caps) -> list[SpaceInstance]:
    """Alexandrov spaces of posets (all finite T0 spaces) plus non-T0 fixtures."""
    out = []
    for n in range(1, caps.max_space_points + 1):
        for P in enumerate_posets(n, cap=config.HARD_MAX_POSET):
            out.append(SpaceInstance(f"{n}:{canonical_hash(P)}", alexandrov_space(P)))
    out.sort(key=lambda inst: inst.key)
    fixtures = [("x:indiscrete2", indiscrete(2)), ("x:indiscrete3", indiscrete(3)),
                ("x:doubled-sierpinski", doubled_sierpinski())]
    return out + [SpaceInstance(k, X) for k, X in fixtures]


def map_instances(caps: config.Caps, frames: list[FrameInstance]) -> list[MapInstance]:
    small = [f for f in frames if f.poset.n <= caps.max_map_poset]
    return [MapInstance(f"{a.key}->{b.key}", a, b) for a, b in itertools.product(small, small)]


# --- helpers --------------------------------------------------------------------------


def _lab(L: FinLattice, mask: int) -> list[str]:
    return [L.labels[i] for i in bits(mask)]


def _principals(L: FinLattice) -> list[int]:
    return [L.up[a] for a in range(L.n)]


def _carriers(fs) -> set[int]:
    return {F if isinstance(F, int) else F.carrier for F in fs}


def _filter_families(L: FinLattice) -> dict[str, list[int]]:
    """Named filter families used when quantifying over 'any family of filters'."""
    return {
        "all": [F.carrier for F in all_filters(L)],
        "principal": _principals(L),
        "regular": [F.carrier for F in regular_filters(L)],
        "exact": [F.carrier for F in exact_filters(L)],
        "strongly_exact": [F.carrier for F in strongly_exact_filters(L)],
        "completely_prime": [F.carrier for F in cp_filters(L)],
        "scott_open": [F.carrier for F in scott_open_filters(L)],
        "top_only": [L.up[L.top]],
    }


# --- frame checks: order core and Birkhoff ----------------------------------------


def chk_birkhoff(inst: FrameInstance) -> Witness:
    dual = prime_dual(inst.L)
    if not are_isomorphic(dual.poset, inst.poset):
        return {"poset_of_primes": poset_to_json(dual.poset)}
    if len(primes(inst.L)) != inst.poset.n:
        return {"primes": len(primes(inst.L))}
    return None


def chk_heyting(inst: FrameInstance) -> Witness:
    L = inst.L
    imp = heyting_table(L)
    for a, b, c in itertools.product(range(L.n), repeat=3):
        if L.leq(c, imp[a][b]) != L.leq(L.meet[c][a], b):
            return {"a": L.labels[a], "b": L.labels[b], "c": L.labels[c]}
    return None


# --- frame checks: sublocales -------------------------------------------------------


def chk_sublocale_coframe(inst: FrameInstance) -> Witness:
    L = inst.L
    cf = all_sublocales(L)
    if len(cf) != 2 ** len(primes(L)):
        return {"sublocales": len(cf), "primes": len(primes(L))}
    bad = [S.carrier for S in cf if not is_sublocale(L, S.carrier)]
    if bad:
        return {"not_a_sublocale": _lab(L, bad[0])}
    if not cf.lattice.is_boolean:
        return {"coframe_not_boolean": True}
    return None


def chk_smallest_sublocale(inst: FrameInstance) -> Witness:
    """Generated sublocale against brute force, over every subset when |L| <= 8."""
    L = inst.L
    if L.n <= config.RAW_ORACLE_LIMIT:
        for X in range(1 << L.n):
            got = generate_sublocale(L, X).carrier
            if got != minimal_sublocale_oracle(L, X):
                return {"subset": _lab(L, X), "generated": _lab(L, got)}
        return None
    # larger frames: singletons and pairs against the meet of all members of S(L) above them
    members = [S.carrier for S in all_sublocales(L)]
    for X in itertools.chain((1 << a for a in range(L.n)),
                             (1 << a | 1 << b for a, b in itertools.combinations(range(L.n), 2))):
        want = L.full
        for S in members:
            if not X & ~S:
                want &= S
        got = generate_sublocale(L, X).carrier
        if got != want:
            return {"subset": _lab(L, X), "generated": _lab(L, got)}
    return None


def chk_manyfacts(inst: FrameInstance) -> Witness:
    """Open/closed sublocale identities, folded over the whole family table."""
    L = inst.L
    cf = all_sublocales(L)
    lat = cf.lattice
    o = np.array([cf.index(open_s(L, a)) for a in range(L.n)], dtype=np.int64)
    c = np.array([cf.index(closed_s(L, a)) for a in range(L.n)], dtype=np.int64)
    whole, triv = cf.index(L.full), cf.index(1 << L.top)
    # 1: o(1) = L, o(0) = {1};  2: c(0) = L, c(1) = {1}
    if (o[L.top], o[L.bot]) != (whole, triv):
        return {"item": 1}
    if (c[L.bot], c[L.top]) != (whole, triv):
        return {"item": 2}
    M, J = _np_tables(lat)
    t = family_table(L)
    # 3: o(⋁A) = ⋁ o(a) and o(a ∧ b) = o(a) ∩ o(b)
    got = reduce_over(J, t.F, o, lat.bot)
    bad = np.flatnonzero(got != o[t.joins])
    if bad.size:
        return {"item": 3, "family": _lab(L, t.masks[bad[0]])}
    # 4: c(⋀A) = ⋁ c(a) over finite families, c(a ∨ b) = c(a) ∩ c(b), and c(⋁A) = ⋂ c(a)
    got = reduce_over(M, t.F, c, lat.top)
    bad = np.flatnonzero(got != c[t.joins])
    if bad.size:
        return {"item": 4, "family": _lab(L, t.masks[bad[0]])}
    for a, b in itertools.product(range(L.n), repeat=2):
        if M[o[a], o[b]] != o[L.meet[a][b]]:
            return {"item": 3, "a": L.labels[a], "b": L.labels[b]}
        if J[c[a], c[b]] != c[L.meet[a][b]]:
            return {"item": 4, "a": L.labels[a], "b": L.labels[b]}
    # 5: o(a) and c(a) are complements
    for a in range(L.n):
        if M[o[a], c[a]] != lat.bot or J[o[a], c[a]] != lat.top:
            return {"item": 5, "a": L.labels[a]}
    # 6: c(a) ⊆ o(b) ⟺ a ∨ b = 1 and o(a) ⊆ c(b) ⟺ a ∧ b = 0
    for a, b in itertools.product(range(L.n), repeat=2):
        if (M[c[a], o[b]] == c[a]) != (L.join[a][b] == L.top):
            return {"item": 6, "a": L.labels[a], "b": L.labels[b], "kind": "c ⊆ o"}
        if (M[o[a], c[b]] == o[a]) != (L.meet[a][b] == L.bot):
            return {"item": 6, "a": L.labels[a], "b": L.labels[b], "kind": "o ⊆ c"}
    return None


def chk_closure_fitting_supplement(inst: FrameInstance) -> Witness:
    L = inst.L
    cf = all_sublocales(L)
    lat = cf.lattice
    closeds = [closed_s(L, a).carrier for a in range(L.n)]
    opens = [open_s(L, a).carrier for a in range(L.n)]
    fitted_set = {S.carrier for S in fitted(L)}
    for i, S in enumerate(cf.members):
        s = S.carrier
        smallest_closed = L.full
        for C in closeds:
            if not s & ~C:
                smallest_closed &= C
        cl = closure_s(S).carrier
        if cl != smallest_closed or cl != L.up[L.meet_of(s)]:
            return {"sublocale": _lab(L, s), "closure": _lab(L, cl)}
        fit = fitting_s(S).carrier
        above = [U for U in opens if not s & ~U]
        if fit not in fitted_set or s & ~fit or any(fit & ~U for U in above):
            return {"sublocale": _lab(L, s), "fitting": _lab(L, fit)}
        # supplement: least T with S ∨ T = L
        sup = codifference(lat, lat.top, i)
        if lat.join[i][sup] != lat.top:
            return {"sublocale": _lab(L, s), "supplement": "does not cover L"}
        for j in range(lat.n):
            if lat.join[i][j] == lat.top and not lat.leq(sup, j):
                return {"sublocale": _lab(L, s), "supplement": "not least"}
    return None


def chk_boolean_sublocales(inst: FrameInstance) -> Witness:
    L = inst.L
    cf = all_sublocales(L)
    bs = set()
    for a in range(L.n):
        b = boolean_s(L, a)
        if b.carrier != generate_sublocale(L, 1 << a).carrier:
            return {"a": L.labels[a], "reason": "b(a) is not the sublocale generated by a"}
        bs.add(b.carrier)
    boolean = {S.carrier for S in cf if sublocale_frame(S)[0].is_boolean}
    if bs != boolean:
        return {"reason": "Boolean sublocales differ from {b(a)}",
                "extra": sorted(map(popcount, boolean ^ bs))}
    return None


def chk_prime_facts(inst: FrameInstance) -> Witness:
    L = inst.L
    cf = all_sublocales(L)
    lat = cf.lattice
    imp = heyting_table(L)
    bps = set()
    for p in primes(L):
        bp = boolean_s(L, p).carrier
        if bp != (1 << p | 1 << L.top):
            return {"p": L.labels[p], "b(p)": _lab(L, bp)}
        bps.add(cf.index(bp))
        for x in range(L.n):
            want = L.top if L.leq(x, p) else p
            if imp[x][p] != want:
                return {"p": L.labels[p], "x": L.labels[x], "x→p": L.labels[imp[x][p]]}
            if (not bp & ~open_s(L, x).carrier) != (not L.leq(x, p)):
                return {"p": L.labels[p], "x": L.labels[x], "reason": "b(p) ⊆ o(x)"}
    join_primes = {
        i for i in range(lat.n) if i != lat.bot and all(
            lat.leq(i, j) or lat.leq(i, k)
            for j in range(lat.n) for k in range(lat.n) if lat.leq(i, lat.join[j][k]))
    }
    if join_primes != bps:
        return {"reason": "join-prime elements of S(L) differ from {b(p)}"}
    return None


def chk_complemented_linear(inst: FrameInstance) -> Witness:
    L = inst.L
    cf = all_sublocales(L)
    lat = cf.lattice
    for a in range(L.n):
        for S in (open_s(L, a), closed_s(L, a)):
            if not is_complemented(cf, S):
                return {"a": L.labels[a], "sublocale": _lab(L, S.carrier), "reason": "not complemented"}
    for i, S in enumerate(cf.members):
        if is_complemented(cf, S) and not is_linear(lat, i):
            return {"sublocale": _lab(L, S.carrier), "reason": "complemented but not linear"}
    return None


# --- frame checks: primes, exactness, D-sublocales ------------------------------------


def chk_covered_primes(inst: FrameInstance) -> Witness:
    L = inst.L
    cov = covered_primes(L)
    if cov != primes(L):
        return {"uncovered": _lab(L, mask_of(primes(L) - cov))}
    for a in range(L.n):
        above = L.up[a] & ~(1 << a)
        if above and not is_exact_meet(L, above):
            return {"a": L.labels[a], "reason": "meet of the strict upset is not exact"}
    exact = _carriers(exact_filters(L))
    for P in pt_points(L):
        p = L.join_of(L.full & ~P)
        if (P in exact) != (p in cov):
            return {"prime": L.labels[p], "reason": "exact CP filter vs covered prime"}
    if set(ptD_points(L)) != set(pt_points(L)):
        return {"reason": "pt_D(L) differs from pt(L)"}
    return None


def chk_d_sublocales(inst: FrameInstance) -> Witness:
    L = inst.L
    cf = all_sublocales(L)
    ds = {S.carrier for S in d_sublocales(L)}
    closed = {closed_s(L, a).carrier for a in range(L.n)}
    if ds != {S.carrier for S in cf}:
        missing = next(S for S in cf if S.carrier not in ds)
        return {"not_D": _lab(L, missing.carrier)}
    if not closed <= ds:
        return {"reason": "a closed sublocale is not D"}
    return None


def chk_exact_meets(inst: FrameInstance) -> Witness:
    L = inst.L
    v = exactness_violations(L)
    for kind, fams in v.items():
        if fams:
            return {"kind": kind, "family": _lab(L, fams[0])}
    for X in range(1, min(1 << L.n, 1 << 8)):
        if not is_exact_meet(L, X) or not is_strongly_exact_meet(L, X):
            return {"family": _lab(L, X), "route": "direct"}
    return None


def chk_exact_sublocales(inst: FrameInstance) -> Witness:
    L = inst.L
    cf = all_sublocales(L)
    ex = {S.carrier for S in exact_sublocales(L)}
    for S in cf:
        if S.carrier not in ex:
            return {"not_exact": _lab(L, S.carrier)}
    return None


def chk_exact_sufficient(inst: FrameInstance) -> Witness:
    """S_E(L) contains opens, closeds and b(p) for covered p, and is closed under joins."""
    L = inst.L
    cf = all_sublocales(L)
    lat = cf.lattice
    ex = {cf.index(S) for S in exact_sublocales(L)}
    seeds = [open_s(L, a) for a in range(L.n)] + [closed_s(L, a) for a in range(L.n)]
    seeds += [boolean_s(L, p) for p in covered_primes(L)]
    for S in seeds:
        if cf.index(S) not in ex:
            return {"sublocale": _lab(L, S.carrier), "reason": "seed not exact"}
    for i, j in itertools.product(sorted(ex), repeat=2):
        if lat.join[i][j] not in ex:
            return {"pair": [_lab(L, cf.members[i].carrier), _lab(L, cf.members[j].carrier)]}
    return None


def chk_exact_subcolocale(inst: FrameInstance) -> Witness:
    """S_E(L) is a subcolocale: closed under joins and under differences S ∖ T."""
    L = inst.L
    cf = all_sublocales(L)
    lat = cf.lattice
    ex = {cf.index(S) for S in exact_sublocales(L)}
    for i in ex:
        for x in range(L.n):
            for T in (open_s(L, x), closed_s(L, x)):
                k = lat.meet[i][cf.index(T)]
                if k not in ex:
                    return {"sublocale": _lab(L, cf.members[i].carrier), "x": L.labels[x]}
        for j in range(lat.n):
            if codifference(lat, i, j) not in ex:
                return {"sublocale": _lab(L, cf.members[i].carrier),
                        "minus": _lab(L, cf.members[j].carrier)}
    return None


def chk_exact_stability(inst: FrameInstance) -> Witness:
    """If ⋀X is exact then so is ⋀{x ∨ y : x ∈ X} for every y."""
    L = inst.L
    t = family_table(L)
    rows = np.flatnonzero(t.exact)
    F = t.F[rows]
    J = np.asarray(L.join, dtype=np.int64)
    shifted = []
    for y in range(L.n):
        G = np.zeros_like(F)
        for x in range(L.n):
            G[:, J[x, y]] |= F[:, x]
        shifted.append(G)
    _, exact = exact_rows(L, np.concatenate(shifted))
    bad = np.flatnonzero(~exact)
    if bad.size:
        y, k = divmod(int(bad[0]), len(rows))
        return {"family": _lab(L, t.masks[rows[k]]), "y": L.labels[y]}
    return None


# --- frame checks: filters ------------------------------------------------------------


def chk_filter_heyting(inst: FrameInstance) -> Witness:
    L = inst.L
    fs = all_filters(L)
    table = filter_heyting_table(L)
    ff = filter_frame(L)
    for i, F in enumerate(fs):
        for j, G in enumerate(fs):
            H = filter_heyting(F, G)
            if ff.index(H) != table[ff.index(F)][ff.index(G)]:
                return {"F": F.label(), "G": G.label(), "reason": "table vs formula"}
    return _residuation(L)


def _residuation(L: FinLattice) -> Witness:
    ff = filter_frame(L)
    lat = ff.lattice
    imp = filter_heyting_table(L)
    for a, b, c in itertools.product(range(lat.n), repeat=3):
        if lat.leq(c, imp[a][b]) != lat.leq(lat.meet[c][a], b):
            return {"F": ff.filters[a].label(), "G": ff.filters[b].label(), "H": ff.filters[c].label()}
    return None


def chk_exact_filters(inst: FrameInstance) -> Witness:
    """Exact filters are the intersections of filters ↑a → ↑b."""
    L = inst.L
    E = _carriers(exact_filters(L))
    gens = set()
    for a, b in itertools.product(range(L.n), repeat=2):
        H = filter_heyting(principal(L, a), principal(L, b)).carrier
        if H != heyting_principal(L, a, b):
            return {"a": L.labels[a], "b": L.labels[b], "reason": "↑a → ↑b formula"}
        gens.add(H)
    if _carriers(intersection_closure(L, gens)) != E:
        return {"reason": "exact filters differ from I({↑a → ↑b})"}
    return None


def chk_regular_filters(inst: FrameInstance) -> Witness:
    """Filt_R is the double-negation fixpoint set of Filt(L), and it is Boolean."""
    L = inst.L
    ff = filter_frame(L)
    lat = ff.lattice
    imp = filter_heyting_table(L)
    bot = lat.bot
    fixed = {ff.filters[i].carrier for i in range(lat.n) if imp[imp[i][bot]][bot] == i}
    R = _carriers(regular_filters(L))
    if fixed != R:
        return {"reason": "regular filters differ from ¬¬-fixpoints",
                "regular": sorted(R), "fixpoints": sorted(fixed)}
    idx = sorted(ff.index(F) for F in R)
    sub = sublocale_frame_of_indices(lat, idx)
    if not sub.is_boolean:
        return {"reason": "Filt_R is not Boolean"}
    return None


def sublocale_frame_of_indices(lat: FinLattice, idx: list[int]) -> FinLattice:
    from .order import validate_lattice

    up = [mask_of(j for j, t in enumerate(idx) if lat.leq(s, t)) for s in idx]
    return validate_lattice(FinPoset(up))


def _tower_entry(L: FinLattice, name: str) -> Witness:
    tower = check_filter_tower(L)
    for e in tower["entries"]:
        if e["name"] == name and not e["holds"]:
            return {"entry": name, "witness": e["witness"]}
    return None


def chk_famouschar(inst: FrameInstance) -> Witness:
    """Subfit ⟺ principal filters regular; spatial ⟺ principals in I(CP)."""
    L = inst.L
    w = _tower_entry(L, "subfit ⟺ principal filters are regular")
    if w:
        return w
    icp = _carriers(intersection_closure(L, cp_filters(L)))
    in_icp = set(_principals(L)) <= icp
    # a frame is spatial when every element is a meet of primes
    ps = primes(L)
    spatial = all(L.meet_of(mask_of(p for p in ps if L.leq(a, p))) == a for a in range(L.n))
    if in_icp != spatial:
        return {"spatial": spatial, "principals_in_I(CP)": in_icp}
    return None


def chk_principalmin(inst: FrameInstance) -> Witness:
    L = inst.L
    for name in ("principal filters ⊆ I(completely prime)", "principal filters ⊆ I(Scott-open)",
                 "exact filters = sublocale of Filt(L) generated by principal filters"):
        w = _tower_entry(L, name)
        if w:
            return w
    return None


def chk_filter_tower(inst: FrameInstance) -> Witness:
    tower = check_filter_tower(inst.L)
    bad = [e for e in tower["entries"] if not e["holds"]]
    if bad:
        return {"entry": bad[0]["name"], "witness": bad[0]["witness"]}
    return None


def chk_eandse(inst: FrameInstance) -> Witness:
    res = eandse_maps(inst.L)
    return None if res["holds"] else res


def chk_filter_collapse(inst: FrameInstance) -> Witness:
    L = inst.L
    fams = _filter_families(L)
    everything = set(fams["all"])
    if len(everything) != L.n or everything != set(_principals(L)):
        return {"reason": "filters are not exactly the principal filters"}
    for name in ("exact", "strongly_exact", "scott_open"):
        if set(fams[name]) != everything:
            return {"family": name, "size": len(fams[name]), "all": L.n}
    return None


# --- frame checks: Raney extensions --------------------------------------------------


def chk_closure_operator(inst: FrameInstance) -> Witness:
    R = unique_extension(inst.L)
    v = closure_operator_violations(R)
    if v:
        return {"violation": v[0]}
    again = validate_raney(inst.L, R.cstar)
    if again != R or again.coframe.covers() != R.coframe.covers():
        return {"reason": "rebuilding from C* changed the coframe"}
    return None


def chk_density_compactness(inst: FrameInstance) -> Witness:
    L = inst.L
    R = unique_extension(L)
    for name, fam in _filter_families(L).items():
        canon = is_canonical(R, fam)
        if canon != (is_dense(R, fam) and is_compact(R, fam)):
            return {"family": name, "reason": "canonical vs dense and compact"}
    for name in ("exact", "regular"):
        if not is_compact(R, _filter_families(L)[name]):
            return {"family": name, "reason": "extension is not compact"}
    return None


def chk_containsprincipal(inst: FrameInstance) -> Witness:
    """I(F) is a valid C* exactly when it contains the principals, is a sublocale, and sits in SE."""
    L = inst.L
    ff = filter_frame(L)
    SE = _carriers(strongly_exact_filters(L))
    E = _carriers(exact_filters(L))
    for name, fam in _filter_families(L).items():
        closure = _carriers(intersection_closure(L, fam))
        predicted = (E <= closure <= SE) and is_sublocale(ff.lattice, ff.mask(closure))
        try:
            R = validate_raney(L, closure)
            valid = True
        except RaneyError:
            valid = False
        if valid != predicted:
            return {"family": name, "valid": valid, "predicted": predicted}
        if valid and (R != unique_extension(L) or not is_canonical(R, fam)):
            return {"family": name, "reason": "valid extension is not the fam-canonical one"}
    return None


def chk_raney_unique(inst: FrameInstance) -> Witness:
    L = inst.L
    exts = enumerate_raney(L)
    if len(exts) != 1:
        return {"extensions": len(exts)}
    R = exts[0]
    if set(R.cstar) != _carriers(exact_filters(L)) or set(R.cstar) != _carriers(strongly_exact_filters(L)):
        return {"reason": "the unique extension is not Filt_E = Filt_SE"}
    return None


def chk_raney_axioms(inst: FrameInstance) -> Witness:
    L = inst.L
    ax = axioms(unique_extension(L))
    if ax["t1"] != L.is_boolean:
        return {"axioms": ax}
    return None


def chk_completely_join_primes(inst: FrameInstance) -> Witness:
    L = inst.L
    R = unique_extension(L)
    cjp = set(completely_join_primes(R))
    cp = _carriers(cp_filters(L))
    if cjp != cp & set(R.cstar):
        return {"reason": "completely join-primes of C differ from CP ∩ C*"}
    if {prime_of_point(L, P) for P in spectrum_points(R)} != set(primes(L)):
        return {"reason": "points of the spectrum do not match the primes"}
    return None


def prime_of_point(L: FinLattice, P: int) -> int:
    return L.join_of(L.full & ~P)


def chk_phi(inst: FrameInstance) -> Witness:
    R = unique_extension(inst.L)
    rep = phi(R)
    if not rep.isomorphism or not is_spatial(R):
        return {"injective": rep.injective, "surjective": rep.surjective,
                "order_embedding": rep.order_embedding}
    return None


def chk_boundary_spectra(inst: FrameInstance) -> Witness:
    L = inst.L
    if spectrum(validate_raney(L, exact_filters(L))) != ptD_space(L):
        return {"reason": "spectrum of (L, Filt_E) differs from pt_D(L)"}
    if spectrum(validate_raney(L, strongly_exact_filters(L))) != pt_space(L):
        return {"reason": "spectrum of (L, Filt_SE) differs from pt(L)"}
    maximal = maximal_primes(L)
    minimal_cp = [F for F in cp_filters(L)
                  if not any(G.carrier != F.carrier and not G.carrier & ~F.carrier
                             for G in cp_filters(L))]
    if {prime_of_point(L, F.carrier) for F in minimal_cp} != set(maximal):
        return {"reason": "minimal CP filters do not match maximal primes"}
    if is_subfit(L):
        if spectrum(validate_raney(L, regular_filters(L))) != maxpt_space(L):
            return {"reason": "spectrum of (L, Filt_R) differs from maxpt(L)"}
    return None


def chk_spectra_interval(inst: FrameInstance) -> Witness:
    L = inst.L
    R = unique_extension(L)
    res = spectra_interval(L)
    if not res["holds"] or res["interval"] != 1:
        return res
    S = spectrum(R)
    if not spectrum_bounds_hold(R) or S != pt_space(L) or S != ptD_space(L):
        return {"reason": "spectrum of the unique extension differs from pt(L) or pt_D(L)"}
    if spectrum_points(R) != pt_points(L):
        return {"reason": "point lists differ"}
    return None


def chk_sobrification(inst: FrameInstance) -> Witness:
    L = inst.L
    R = unique_extension(L)
    S, sigma = sobrification(R)
    if sigma != tuple(range(len(R))):
        return {"reason": "sobrification map is not the identity"}
    icp = validate_raney(L, intersection_closure(L, cp_filters(L)))
    if (icp == R) != (axioms(R)["sober"] and axioms(R)["spatial"]):
        return {"reason": "sober and spatial vs C* = I(CP)"}
    return None


def chk_td_reflection(inst: FrameInstance) -> Witness:
    R = unique_extension(inst.L)
    T, delta = td_reflection(R)
    if not is_TD(T) or delta != tuple(range(len(R))):
        return {"reason": "T_D reflection is not the identity on a T_D extension"}
    return None


def chk_t1_reflection(inst: FrameInstance) -> Witness:
    L = inst.L
    R = unique_extension(L)
    if is_subfit(L):
        T, m = t1_reflection(R)
        if not is_T1(T) or sorted(set(m)) != list(range(len(T))):
            return {"reason": "T1 reflection is not a surjection onto a T1 extension"}
        return None
    try:
        t1_reflection(R)
    except NotSubfit:
        return None
    return {"reason": "T1 reflection accepted a non-subfit frame"}


def chk_charsubfit(inst: FrameInstance) -> Witness:
    L = inst.L
    direct = is_subfit(L)
    regular = _carriers(regular_filters(L))
    principal_regular = set(_principals(L)) <= regular
    t1_exists = any(is_T1(R) for R in enumerate_raney(L))
    all_exact_regular = _carriers(exact_filters(L)) <= regular
    row = [direct, principal_regular, t1_exists, L.is_boolean, all_exact_regular]
    if len(set(row)) != 1:
        return {"subfit": direct, "principals_regular": principal_regular,
                "t1_extension": t1_exists, "boolean": L.is_boolean,
                "exact_are_regular": all_exact_regular}
    return None


def chk_scatteredness(inst: FrameInstance) -> Witness:
    L = inst.L
    res = scatteredness(L)
    if not res["scattered"] or not is_scattered_frame(L):
        return res
    if is_subfit(L) and not all(res.values()):
        return res
    return None


# --- map checks --------------------------------------------------------------------------


def chk_lifting(inst: MapInstance) -> Witness:
    L, M = inst.src.L, inst.dst.L
    R, S = unique_extension(L), unique_extension(M)
    RE = validate_raney(L, exact_filters(L))
    SE = validate_raney(M, exact_filters(M))
    for f in frame_maps(L, M):
        lift = lift_frame_map(f, R, S)
        if not lift.exists:
            return {"images": list(f.images), "offending": _lab(M, lift.offending)}
        if lift_frame_map(f, RE, SE).exists != is_exact_map(f):
            return {"images": list(f.images), "reason": "E-lift vs exactness"}
    return None


def chk_exact_d_maps(inst: MapInstance) -> Witness:
    for f in frame_maps(inst.src.L, inst.dst.L):
        if not is_exact_map(f) or not is_D_morphism(f):
            return {"images": list(f.images), "exact": is_exact_map(f), "D": is_D_morphism(f)}
    return None


def chk_reflection_universal(inst: MapInstance) -> Witness:
    """Lifts into T_D / T1 targets factor through the reflection maps."""
    L, M = inst.src.L, inst.dst.L
    R = unique_extension(L)
    targets = [("td", td_reflection(R), validate_raney(M, exact_filters(M)))]
    if is_subfit(L) and is_subfit(M):
        targets.append(("t1", t1_reflection(R), validate_raney(M, regular_filters(M))))
    for f in frame_maps(L, M):
        for name, (T, unit), S in targets:
            direct = lift_frame_map(f, R, S)
            through = lift_frame_map(f, T, S)
            if not direct.exists or not through.exists:
                return {"images": list(f.images), "target": name, "reason": "missing lift"}
            if any(direct.mapping[i] != through.mapping[unit[i]] for i in range(len(R))):
                return {"images": list(f.images), "target": name, "reason": "does not factor"}
    ident = identity_map(L)
    if lift_frame_map(ident, R, R).mapping != tuple(range(len(R))):
        return {"reason": "identity does not lift to the identity"}
    return None


# --- space checks ----------------------------------------------------------------------


def chk_specialization(inst: SpaceInstance) -> Witness:
    X = inst.X
    pre = specialization(X)
    if pre.is_order != is_T0(X):
        return {"reason": "specialization is an order iff T0"}
    sats = set(saturated_sets(X))
    if any(not all(pre.leq(x, y) <= bool(S >> y & 1) for x in bits(S) for y in range(X.n))
           for S in sats):
        return {"reason": "a saturated set is not an upset"}
    return None


def chk_psi(inst: SpaceInstance) -> Witness:
    X = inst.X
    rep = psi(X)
    if rep.homeomorphism != is_T0(X) or rep.injective != is_T0(X):
        return {"T0": is_T0(X), "homeomorphism": rep.homeomorphism, "injective": rep.injective}
    return None


def chk_omega_r(inst: SpaceInstance) -> Witness:
    X = inst.X
    R = omega_R(X)
    if len(R) != len(set(saturated_sets(X))) and is_T0(X):
        return {"cstar": len(R), "saturated": len(saturated_sets(X))}
    rep = phi(R)
    if not rep.isomorphism:
        return {"reason": "φ is not an isomorphism on Ω_R(X)"}
    return None


def chk_td_space(inst: SpaceInstance) -> Witness:
    X = inst.X
    if not is_T0(X):
        try:
            chartd_conditions(X)
        except NotT0:
            return None
        return {"reason": "T_D characterization answered for a non-T0 space"}
    cond = chartd_conditions(X)
    if len(set(cond.values())) != 1 or not cond["td"]:
        return cond
    L = X.omega
    # every point's complement of its closure is a covered prime of Ω(X)
    cov = covered_primes(L)
    for x in range(X.n):
        U = X.full & ~X.closure(1 << x)
        if X.open_index[U] not in cov:
            return {"point": X.labels[x], "reason": "X ∖ cl{x} is not a covered prime"}
    if not space_is_TD(X):
        return {"reason": "finite T0 space is not T_D"}
    return None


def chk_t1_space(inst: SpaceInstance) -> Witness:
    X = inst.X
    t1 = space_is_T1(X)
    R = omega_R(X)
    L = X.omega
    reg = _carriers(regular_filters(L))
    if t1:
        if not t1_powerset_check(X):
            return {"reason": "U(X)* differs from P(X)* or Filt_R(Ω(X))"}
    if is_T0(X) and t1 != (set(R.cstar) == reg):
        return {"T1": t1, "reason": "T1 vs C* = Filt_R"}
    if is_T0(X) and t1 != is_T1(R):
        return {"T1": t1, "reason": "T1 space vs T1 extension"}
    return None


def chk_sober_space(inst: SpaceInstance) -> Witness:
    X = inst.X
    if not is_T0(X):
        return None
    sober = is_sober_space(X)
    ext = axioms(omega_R(X))["sober"]
    if not sober or sober != ext:
        return {"sober_space": sober, "sober_extension": ext}
    return None


def chk_omega_pt(inst: SpaceInstance) -> Witness:
    X = inst.X
    rt = pt_round_trip(X)
    if (rt is not None) != (is_T0(X) and is_sober_space(X)):
        return {"round_trip": rt is not None, "T0": is_T0(X)}
    return None


def chk_strongly_exact_opens(inst: SpaceInstance) -> Witness:
    """Strongly exact meets in Ω(X) are intersections."""
    X = inst.X
    L = X.omega
    t = family_table(L)
    for k in np.flatnonzero(t.strongly_exact):
        inter = X.full
        for i in bits(t.masks[k]):
            inter &= X.opens[i]
        if X.opens[int(t.meets[k])] != inter:
            return {"family": [X.show(X.opens[i]) for i in bits(t.masks[k])]}
    return None


# --- registry ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    id: str
    statement: str
    scope: str  # "frame" | "space" | "map"
    fn: Callable[..., Witness] = field(repr=False)
    covers: tuple[str, ...] = ()


REGISTRY: tuple[Check, ...] = (
    Check("birkhoff-round-trip", "L ≅ U(primes(L)) and primes(U(P)) ≅ P", "frame", chk_birkhoff,
          ("birkhoff duality",)),
    Check("heyting-residuation", "c ≤ a→b ⟺ c∧a ≤ b", "frame", chk_heyting, ("heyting implication",)),
    Check("sublocale-coframe", "|S(L)| = 2^|primes| and S(L) is a Boolean coframe", "frame",
          chk_sublocale_coframe, ("sublocale coframe", "scattered finite frames")),
    Check("smallest-sublocale", "generated sublocale = brute-force minimum", "frame",
          chk_smallest_sublocale, ("smallest sublocale containing a set",)),
    Check("manyfacts", "open and closed sublocale identities, items 1-6", "frame", chk_manyfacts,
          ("open and closed sublocale identities",)),
    Check("closure-fitting-supplement", "closure, fitting and supplement are extremal", "frame",
          chk_closure_fitting_supplement, ("closure fitting supplement",)),
    Check("boolean-sublocales", "Boolean sublocales are exactly the b(a)", "frame",
          chk_boolean_sublocales, ("boolean sublocales",)),
    Check("prime-sublocales", "b(p) = {p, 1} and the b(p) are the join-primes of S(L)", "frame",
          chk_prime_facts, ("prime sublocales",)),
    Check("complemented-linear", "complemented sublocales are linear", "frame",
          chk_complemented_linear, ("complemented implies linear",)),
    Check("covered-primes", "all primes covered, strict-upset meets exact, pt = pt_D", "frame",
          chk_covered_primes, ("covered primes", "exact completely prime filters",
                               "strict upset meets are exact")),
    Check("d-sublocales", "every sublocale is a D-sublocale", "frame", chk_d_sublocales,
          ("D-sublocales",)),
    Check("exact-meets", "every meet is exact and strongly exact", "frame", chk_exact_meets,
          ("exact and strongly exact meets",)),
    Check("exact-sublocales", "every sublocale is exact", "frame", chk_exact_sublocales,
          ("exact sublocales",)),
    Check("exact-sublocale-generators", "S_E(L) contains opens, closeds, b(p) and is join-closed",
          "frame", chk_exact_sufficient, ("sufficient conditions for exact sublocales",)),
    Check("exact-subcolocale", "S_E(L) is a subcolocale of S(L)", "frame", chk_exact_subcolocale,
          ("exact sublocales form a subcolocale",)),
    Check("exact-stability", "exact meets stay exact after joining with y", "frame",
          chk_exact_stability, ("stability of exact meets",)),
    Check("filter-heyting", "Heyting implication on Filt(L) by formula and residuation", "frame",
          chk_filter_heyting, ("heyting implication on filters",)),
    Check("exact-filters", "exact filters are intersections of ↑a → ↑b", "frame", chk_exact_filters,
          ("exact filter characterization",)),
    Check("regular-filters", "Filt_R = ¬¬-fixpoints, a Boolean algebra", "frame",
          chk_regular_filters, ("regular filters",)),
    Check("subfit-spatial-filters", "subfit ⟺ principals regular; spatial ⟺ principals in I(CP)",
          "frame", chk_famouschar, ("subfitness and spatiality via filters",)),
    Check("principal-minimal", "principals lie in I(CP), I(SO); Filt_E generated by principals",
          "frame", chk_principalmin, ("exact filters generated by principals",)),
    Check("filter-tower", "inclusions among filter classes; classes are sublocales of Filt(L)",
          "frame", chk_filter_tower, ("filter class inclusions",)),
    Check("eandse", "fit: Filt_SE^op ≅ S_o(L) and cl: Filt_E ≅ S_c(L)", "frame", chk_eandse,
          ("fitted and joins-of-closed coframes via filters",)),
    Check("filter-collapse", "all filters principal; Filt_E = Filt_SE = Filt_SO = Filt(L)", "frame",
          chk_filter_collapse, ("finite filter collapse",)),
    Check("raney-closure", "↑∘⋀ is a closure operator with fixpoints C*; C* determines C", "frame",
          chk_closure_operator, ("raney closure operator", "C* determines C")),
    Check("density-compactness", "canonical ⟺ dense and compact; E- and R-compact", "frame",
          chk_density_compactness, ("canonical extensions", "compactness of extensions")),
    Check("valid-filter-families", "I(F) is a C* iff it lies between Filt_E and Filt_SE as a sublocale",
          "frame", chk_containsprincipal, ("filter families giving extensions",)),
    Check("raney-unique", "exactly one Raney extension, Filt_E = Filt_SE", "frame", chk_raney_unique,
          ("raney extension boundaries",)),
    Check("raney-axioms", "finite extensions are sober, T_D, spatial; T1 ⟺ Boolean", "frame",
          chk_raney_axioms, ("separation axioms of extensions",)),
    Check("completely-join-primes", "CP filters in C* = completely join-primes of C", "frame",
          chk_completely_join_primes, ("points as completely prime filters",)),
    Check("phi-isomorphism", "φ is an isomorphism and the extension is spatial", "frame", chk_phi,
          ("spatial extensions", "extension unit")),
    Check("boundary-spectra", "spectra of Filt_E, Filt_SE, Filt_R are pt_D, pt, maxpt", "frame",
          chk_boundary_spectra, ("spectra of boundary extensions", "minimal completely prime filters",
                                 "maximal spectrum")),
    Check("spectra-interval", "spectra form the interval [pt_D, pt], a single space", "frame",
          chk_spectra_interval, ("spectra interval",)),
    Check("sobrification", "sobrification is the identity; sober+spatial ⟺ C* = I(CP)", "frame",
          chk_sobrification, ("sobrification",)),
    Check("td-reflection", "T_D reflection is the identity", "frame", chk_td_reflection,
          ("T_D reflection",)),
    Check("t1-reflection", "T1 reflection exists exactly for subfit frames", "frame",
          chk_t1_reflection, ("T1 reflection",)),
    Check("subfit-quadruple", "subfit ⟺ principals regular ⟺ T1 extension ⟺ Boolean", "frame",
          chk_charsubfit, ("subfitness characterization",)),
    Check("scatteredness", "S(L) Boolean; scattered conditions agree on subfit frames", "frame",
          chk_scatteredness, ("scatteredness",)),
    Check("frame-map-lifting", "frame maps lift to extensions; E-lifts ⟺ exact", "map",
          chk_lifting, ("lifting frame maps",)),
    Check("exact-d-maps", "every frame map is exact and a D-morphism", "map", chk_exact_d_maps,
          ("maps between finite frames are exact",)),
    Check("reflection-universal", "lifts into T_D and T1 targets factor through the reflections",
          "map", chk_reflection_universal, ("reflection universal properties",)),
    Check("specialization", "specialization order iff T0; saturated = upsets", "space",
          chk_specialization, ("specialization order", "saturated sets are upsets")),
    Check("psi-homeomorphism", "ψ is a homeomorphism iff T0", "space", chk_psi,
          ("space unit",)),
    Check("omega-r", "Ω_R(X) is generated by neighbourhood filters and is spatial", "space",
          chk_omega_r, ("neighbourhood filters generate", "extension-space adjunction")),
    Check("td-spaces", "T_D conditions agree on T0 spaces; refused otherwise", "space",
          chk_td_space, ("T_D characterization", "covered primes of spaces")),
    Check("t1-spaces", "T1 ⟺ U(X) = P(X) ⟺ C* = Filt_R", "space", chk_t1_space,
          ("T1 spaces", "regular neighbourhood filters")),
    Check("sober-spaces", "finite T0 spaces are sober, matching the extension", "space",
          chk_sober_space, ("sober spaces",)),
    Check("omega-pt", "X ≅ pt(Ω(X)) exactly for sober T0 X", "space", chk_omega_pt,
          ("frame-space adjunction",)),
    Check("strongly-exact-opens", "strongly exact meets of opens are intersections", "space",
          chk_strongly_exact_opens, ("strongly exact meets of opens",)),
)

# Results that the registry must cover; the audit test compares against this list.
REQUIRED = (
    "birkhoff duality", "sublocale coframe", "smallest sublocale containing a set",
    "open and closed sublocale identities", "closure fitting supplement", "boolean sublocales",
    "prime sublocales", "complemented implies linear", "covered primes", "D-sublocales",
    "exact and strongly exact meets", "exact filter characterization", "regular filters",
    "heyting implication on filters", "subfitness and spatiality via filters",
    "exact filters generated by principals", "filter class inclusions",
    "fitted and joins-of-closed coframes via filters", "raney closure operator", "C* determines C",
    "canonical extensions", "compactness of extensions", "filter families giving extensions",
    "lifting frame maps", "raney extension boundaries", "points as completely prime filters",
    "spatial extensions", "extension unit", "space unit", "extension-space adjunction",
    "spectra of boundary extensions", "minimal completely prime filters", "maximal spectrum",
    "spectra interval", "sobrification", "T_D characterization", "T_D reflection",
    "regular neighbourhood filters", "T1 spaces", "subfitness characterization", "T1 reflection",
    "scatteredness", "maps between finite frames are exact", "exact sublocales",
    "sufficient conditions for exact sublocales", "exact sublocales form a subcolocale",
    "stability of exact meets", "strict upset meets are exact", "exact completely prime filters",
    "frame-space adjunction", "saturated sets are upsets", "strongly exact meets of opens",
    "neighbourhood filters generate",
)

BY_ID = {c.id: c for c in REGISTRY}


def uncovered() -> list[str]:
    covered = {c for chk in REGISTRY for c in chk.covers}
    return [r for r in REQUIRED if r not in covered]


# --- runner --------------------------------------------------------------------------------


def select(only: Iterable[str] | None) -> list[Check]:
    if not only:
        return list(REGISTRY)
    ids = list(only)
    unknown = [i for i in ids if i not in BY_ID]
    if unknown:
        raise ConfigError(f"unknown check ids: {', '.join(unknown)}")
    return [c for c in REGISTRY if c.id in ids]


def _run_one(check: Check, inst) -> Witness:
    try:
        return check.fn(inst)
    except (RaneyError, AssertionError, ValueError) as exc:
        return {"error": type(exc).__name__, "message": str(exc)}


def _run_instance(args) -> list[tuple[str, Witness]]:
    ids, inst = args
    return [(i, _run_one(BY_ID[i], inst)) for i in ids]


def run_theorem_suite(caps: config.Caps | None = None, only: Iterable[str] | None = None,
                      jobs: int = 1) -> dict:
    """Run the selected checks over every instance within caps; deterministic report."""
    caps = caps or config.Caps()
    if caps.max_poset > config.DEFAULT_MAX_POSET:
        raise SizeCap(f"theorem suite is capped at posets of {config.DEFAULT_MAX_POSET} elements")
    checks = select(only)
    frames = frame_instances(caps)
    scopes = {c.scope for c in checks}
    instances = {
        "frame": frames,
        "space": space_instances(caps) if "space" in scopes else [],
        "map": map_instances(caps, frames) if "map" in scopes else [],
    }
    tasks = []
    for scope, insts in instances.items():
        ids = [c.id for c in checks if c.scope == scope]
        if ids:
            tasks += [(ids, inst) for inst in insts]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_instance, tasks, chunksize=4))
    else:
        results = [_run_instance(t) for t in tasks]
    summary = {c.id: {"id": c.id, "statement": c.statement, "scope": c.scope,
                      "instances": 0, "failed": 0, "counterexample": None} for c in checks}
    for (_, inst), res in zip(tasks, results):
        for cid, witness in res:
            entry = summary[cid]
            entry["instances"] += 1
            if witness is not None:
                entry["failed"] += 1
                if entry["counterexample"] is None:
                    entry["counterexample"] = {"instance": inst.describe(), "witness": witness}
    rows = [summary[c.id] for c in checks]
    for r in rows:
        r["passed"] = r["instances"] - r["failed"]
    return {
        "caps": {"max_poset": caps.max_poset, "max_elements": caps.elements,
                 "max_map_poset": caps.max_map_poset, "max_space_points": caps.max_space_points},
        "counts": {k: len(v) for k, v in instances.items()},
        "checks": rows,
        "ok": all(r["failed"] == 0 for r in rows),
    }


# --- atlas and single-object analysis -------------------------------------------------------


ATLAS_COLUMNS = ("hash", "poset_size", "elements", "primes", "subfit", "boolean", "sublocales",
                 "regular_filters", "pt", "pt_d", "maxpt", "raney_points",
                 "sober", "td", "t1", "spatial")


def atlas_row(inst: FrameInstance) -> dict:
    L = inst.L
    R = unique_extension(L)
    ax = axioms(R)
    return {
        "hash": inst.key.split(":", 1)[1],
        "poset_size": inst.poset.n,
        "elements": L.n,
        "primes": len(primes(L)),
        "subfit": is_subfit(L),
        "boolean": L.is_boolean,
        "sublocales": len(all_sublocales(L)),
        "regular_filters": len(regular_filters(L)),
        "pt": len(pt_points(L)),
        "pt_d": len(ptD_points(L)),
        "maxpt": len(maximal_primes(L)),
        "raney_points": len(spectrum_points(R)),
        **ax,
    }


def atlas(n: int, caps: config.Caps | None = None) -> list[dict]:
    """One row per frame generated by an n-element poset, ordered by canonical hash."""
    caps = caps or config.Caps(max_poset=max(n, 0))
    if n > caps.max_poset:
        raise SizeCap(f"atlas size {n} exceeds the poset cap {caps.max_poset}")
    return [atlas_row(inst) for inst in frame_instances(caps, sizes=[n])]


def analyze_frame(L: FinLattice) -> dict:
    from .formats import require_frame

    require_frame(L)
    R = unique_extension(L)
    tower = check_filter_tower(L)
    return {
        "kind": "frame",
        "lattice": lattice_to_json(L),
        "elements": L.n,
        "boolean": L.is_boolean,
        "subfit": is_subfit(L),
        "primes": sorted(L.labels[p] for p in primes(L)),
        "covered_primes": sorted(L.labels[p] for p in covered_primes(L)),
        "maximal_primes": sorted(L.labels[p] for p in maximal_primes(L)),
        "sublocales": len(all_sublocales(L)),
        "filters": tower["counts"],
        "filter_tower": tower["holds"],
        "raney": {"cstar": [L.labels[L.meet_of(X)] for X in R.cstar], "axioms": axioms(R)},
        "spectra": spectra_report(L),
    }


def spectra_report(L: FinLattice) -> dict:
    R = unique_extension(L)
    out = {
        "pt": space_to_json(pt_space(L)),
        "pt_d": space_to_json(ptD_space(L)),
        "raney": space_to_json(spectrum(R)),
        "interval": spectra_interval(L),
    }
    if is_subfit(L):
        out["maxpt"] = space_to_json(maxpt_space(L))
    return out


def analyze_space(X: FinSpace) -> dict:
    t0 = is_T0(X)
    R = omega_R(X)
    return {
        "kind": "space",
        "space": space_to_json(X),
        "points": X.n,
        "opens": len(X.opens),
        "t0": t0,
        "td": space_is_TD(X),
        "t1": space_is_T1(X),
        "sober": is_sober_space(X),
        "psi_homeomorphism": psi(X).homeomorphism,
        "omega": lattice_to_json(X.omega),
        "raney": {"cstar": len(R), "axioms": axioms(R)},
    }
