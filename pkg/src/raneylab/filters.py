"""Filters of a finite frame and the classified families inside Filt(L).

Classification predicates are evaluated from their definitions over the
quantification domain of :func:`raneylab.order.family_table`, and then
compared with the characterizations (intersections of generators,
Booleanization, primes).  On a finite host every filter is principal; that is
asserted, never assumed.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np

from . import config
from .errors import OracleMismatch
from .order import (
    FinLattice,
    bits,
    family_table,
    lattice_cached,
    lattice_of_sets,
    mask_of,
    meet_closure,
    popcount,
    primes,
)


@dataclass(frozen=True)
class Filter:
    """Carrier bitset of a filter. Equality ignores the host."""

    carrier: int
    host: FinLattice = field(compare=False, repr=False)

    def __contains__(self, x: int) -> bool:
        return bool(self.carrier >> x & 1)

    def __len__(self) -> int:
        return popcount(self.carrier)

    def __le__(self, other: Filter) -> bool:
        return not self.carrier & ~other.carrier

    def elements(self) -> list[int]:
        return list(bits(self.carrier))

    @property
    def minimum(self) -> int:
        m = self.host.meet_of(self.carrier)
        if self.host.up[m] != self.carrier:
            raise OracleMismatch(f"filter {self.carrier:#b} is not principal")
        return m

    def label(self) -> str:
        return "↑" + self.host.labels[self.minimum]


def is_filter(L: FinLattice, F: int) -> bool:
    """Nonempty upset closed under binary meets."""
    if not F:
        return False
    for x in bits(F):
        if L.up[x] & ~F:
            return False
        for y in bits(F):
            if not F >> L.meet[x][y] & 1:
                return False
    return True


def principal(L: FinLattice, a: int) -> Filter:
    return Filter(L.up[a], L)


def generated_filter(L: FinLattice, X: int) -> int:
    """Smallest filter containing X; the empty set generates {1}."""
    closed = meet_closure(L, X) | 1 << L.top
    acc = 0
    for x in bits(closed):
        acc |= L.up[x]
    return acc


def _sort(carriers: Iterable[int]) -> list[int]:
    return sorted(set(carriers), key=lambda c: (popcount(c), c))


def _wrap(L: FinLattice, carriers: Iterable[int]) -> tuple[Filter, ...]:
    return tuple(Filter(c, L) for c in _sort(carriers))


def raw_filters(L: FinLattice) -> list[int]:
    """All filters by scanning every subset. Oracle only."""
    if L.n > config.RAW_ORACLE_LIMIT:
        raise ValueError("raw filter scan is limited to small hosts")
    return [F for F in range(1, 1 << L.n) if is_filter(L, F)]


@lattice_cached
def all_filters(L: FinLattice) -> tuple[Filter, ...]:
    """Every filter, closing singleton-generated filters under ∩ and filter joins."""
    family = {generated_filter(L, 1 << x) for x in range(L.n)}
    while True:
        new = set()
        for F in family:
            for G in family:
                new.add(F & G)
                new.add(generated_filter(L, F | G))
        new -= family
        if not new:
            break
        family |= new
    for F in family:
        if not is_filter(L, F):
            raise OracleMismatch(f"{F:#b} was generated but is not a filter")
    if L.n <= config.RAW_ORACLE_LIMIT and set(raw_filters(L)) != family:
        raise OracleMismatch("filter generation disagrees with the raw subset scan")
    out = _wrap(L, family)
    if len(out) != L.n:
        raise OracleMismatch(f"{len(out)} filters on a {L.n}-element frame")
    mins = [F.minimum for F in out]
    for F, a in zip(out, mins):
        for G, b in zip(out, mins):
            if (F <= G) != L.leq(b, a):
                raise OracleMismatch("Filt(L) is not anti-isomorphic to L")
    return out


@dataclass(frozen=True, eq=False)
class FilterFrame:
    """Filt(L) ordered by inclusion, as a :class:`FinLattice` over filter indices."""

    host: FinLattice
    filters: tuple[Filter, ...]
    lattice: FinLattice
    positions: dict = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "positions", {F.carrier: i for i, F in enumerate(self.filters)})

    def index(self, F: Filter | int) -> int:
        return self.positions[F.carrier if isinstance(F, Filter) else F]

    def mask(self, fs: Iterable[Filter | int]) -> int:
        return mask_of(self.index(F) for F in fs)

    def unmask(self, m: int) -> tuple[Filter, ...]:
        return tuple(self.filters[i] for i in bits(m))

    @property
    def bottom(self) -> Filter:
        return self.filters[self.lattice.bot]


@lattice_cached
def filter_frame(L: FinLattice) -> FilterFrame:
    fs = all_filters(L)
    lat = lattice_of_sets([F.carrier for F in fs], [F.label() for F in fs])
    if not lat.is_distributive:
        raise OracleMismatch("Filt(L) is not distributive")
    return FilterFrame(L, fs, lat)


def _heyting_formula(L: FinLattice, F: int, G: int) -> int:
    """⋂_{f ∈ F} {x : x ∨ f ∈ G}."""
    acc = L.full
    for f in bits(F):
        acc &= mask_of(x for x in range(L.n) if G >> L.join[x][f] & 1)
    return acc


def filter_heyting(F: Filter, G: Filter) -> Filter:
    """Heyting implication F → G in Filt(L), cross-checked with the frame Filt(L)."""
    L = F.host
    if G.host is not L:
        raise ValueError("filters live in different frames")
    result = _heyting_formula(L, F.carrier, G.carrier)
    ff = filter_frame(L)
    from .order import heyting

    expected = ff.filters[heyting(ff.lattice, ff.index(F), ff.index(G))].carrier
    if result != expected:
        raise OracleMismatch(f"filter Heyting formula gives {result:#b}, the frame gives {expected:#b}")
    return Filter(result, L)


@lattice_cached
def filter_heyting_table(L: FinLattice) -> tuple[tuple[int, ...], ...]:
    """Index table of F → G over Filt(L), formula route vectorized and compared."""
    ff = filter_frame(L)
    from .order import heyting_table

    frame_table = heyting_table(ff.lattice)
    J = np.asarray(L.join, dtype=np.int64)
    fs = ff.filters
    member = np.array([[F.carrier >> x & 1 for x in range(L.n)] for F in fs], dtype=bool)
    for i, F in enumerate(fs):
        rows = J[list(bits(F.carrier)), :]  # rows[f, x] = x ∨ f
        for j in range(len(fs)):
            got = member[j][rows].all(axis=0)
            if mask_of(np.flatnonzero(got).tolist()) != fs[frame_table[i][j]].carrier:
                raise OracleMismatch(f"filter Heyting formula disagrees at ({i}, {j})")
    return frame_table


def intersection_closure(L: FinLattice, filters: Iterable[Filter | int]) -> tuple[Filter, ...]:
    """Smallest ∩-closed family containing the input and L itself."""
    family = {F.carrier if isinstance(F, Filter) else F for F in filters} | {L.full}
    while True:
        new = {F & G for F in family for G in family} - family
        if not new:
            return _wrap(L, family)
        family |= new


def _carriers(fs: Iterable[Filter]) -> set[int]:
    return {F.carrier for F in fs}


# --- classified families -------------------------------------------------------


def regular_generator(L: FinLattice, a: int) -> int:
    """{x : x ∨ a = 1}."""
    return mask_of(x for x in range(L.n) if L.join[x][a] == L.top)


@lattice_cached
def regular_filters(L: FinLattice) -> tuple[Filter, ...]:
    """Intersections of the generators {x : x ∨ a = 1}, compared with {F → {1}}."""
    gens = intersection_closure(L, [regular_generator(L, a) for a in range(L.n)])
    ff = filter_frame(L)
    bottom = ff.bottom
    booleanized = {filter_heyting(F, bottom).carrier for F in ff.filters}
    if _carriers(gens) != booleanized:
        raise OracleMismatch("regular filters: generator route and Booleanization route disagree")
    return gens


def _closed_under(L: FinLattice, F: int, usable: np.ndarray) -> list[int]:
    """Families of the domain inside F (and ``usable``) whose meet escapes F."""
    t = family_table(L)
    inside = np.array([F >> x & 1 for x in range(L.n)], dtype=bool)
    contained = ~(t.F & ~inside[None, :]).any(axis=1)
    bad = usable & contained & ~inside[t.meets]
    return [t.masks[k] for k in np.flatnonzero(bad)]


def exact_filter_witness(L: FinLattice, F: Filter) -> int | None:
    bad = _closed_under(L, F.carrier, family_table(L).exact)
    return bad[0] if bad else None


def strongly_exact_filter_witness(L: FinLattice, F: Filter) -> int | None:
    bad = _closed_under(L, F.carrier, family_table(L).strongly_exact)
    return bad[0] if bad else None


def heyting_principal(L: FinLattice, a: int, b: int) -> int:
    """↑a → ↑b = {x : b <= x ∨ a}."""
    return mask_of(x for x in range(L.n) if L.leq(b, L.join[x][a]))


@lattice_cached
def exact_filters(L: FinLattice) -> tuple[Filter, ...]:
    """Filters closed under exact meets, compared with ∩ of the filters ↑a → ↑b."""
    direct = {F.carrier for F in all_filters(L) if exact_filter_witness(L, F) is None}
    char = _carriers(intersection_closure(
        L, [heyting_principal(L, a, b) for a in range(L.n) for b in range(L.n)]
    ))
    if direct != char:
        raise OracleMismatch("exact filters: closure test and ↑a → ↑b characterization disagree")
    return _wrap(L, direct)


@lattice_cached
def strongly_exact_filters(L: FinLattice) -> tuple[Filter, ...]:
    return _wrap(L, (
        F.carrier for F in all_filters(L) if strongly_exact_filter_witness(L, F) is None
    ))


def _inaccessible(L: FinLattice, F: int, usable: np.ndarray) -> bool:
    t = family_table(L)
    inside = np.array([F >> x & 1 for x in range(L.n)], dtype=bool)
    meets_F = (t.F & inside[None, :]).any(axis=1)
    return not (usable & inside[t.joins] & ~meets_F).any()


@lattice_cached
def cp_filters(L: FinLattice) -> tuple[Filter, ...]:
    """Filters inaccessible by joins, the empty join included.

    Binary joins are checked as well as the family domain, which makes the
    test complete for all finite joins on any host size.  Compared with the
    primes through p ↦ L ∖ ↓p.
    """
    t = family_table(L)
    everything = np.ones(len(t), dtype=bool)
    out = set()
    for F in all_filters(L):
        c = F.carrier
        if c >> L.bot & 1:
            continue
        binary_ok = all(
            c >> x & 1 or c >> y & 1
            for x in range(L.n) for y in range(L.n) if c >> L.join[x][y] & 1
        )
        if binary_ok and _inaccessible(L, c, everything):
            out.add(c)
    via_primes = {L.full & ~L.down[p] for p in primes(L)}
    if out != via_primes:
        raise OracleMismatch("completely prime filters do not match L ∖ ↓p for primes p")
    return _wrap(L, out)


def cp_filter_of_prime(L: FinLattice, p: int) -> Filter:
    return Filter(L.full & ~L.down[p], L)


def prime_of_cp_filter(L: FinLattice, P: Filter) -> int:
    """The largest element outside P."""
    return L.join_of(L.full & ~P.carrier)


@lattice_cached
def scott_open_filters(L: FinLattice) -> tuple[Filter, ...]:
    """Filters inaccessible by directed joins.

    A finite family is directed exactly when it contains its own join, so
    the directed members of the family domain are those.
    """
    t = family_table(L)
    directed = t.F[np.arange(len(t)), t.joins]
    return _wrap(L, (F.carrier for F in all_filters(L) if _inaccessible(L, F.carrier, directed)))


def is_regular_filter(L: FinLattice, F: Filter) -> bool:
    return F.carrier in _carriers(regular_filters(L))


def is_exact_filter(L: FinLattice, F: Filter) -> bool:
    return F.carrier in _carriers(exact_filters(L))


def is_cp_filter(L: FinLattice, F: Filter) -> bool:
    return F.carrier in _carriers(cp_filters(L))


# --- the tower of inclusions ----------------------------------------------------


def _inclusion(name: str, small: Iterable[Filter], big: Iterable[Filter]) -> dict:
    missing = sorted(_carriers(small) - _carriers(big))
    return {"name": name, "holds": not missing, "witness": missing[:1]}


def check_filter_tower(L: FinLattice) -> dict:
    """Inclusions among the filter families plus the principal-filter criteria."""
    from .order import is_subfit
    from .sublocales import generate_sublocale, is_sublocale

    R = regular_filters(L)
    E = exact_filters(L)
    SE = strongly_exact_filters(L)
    ICP = intersection_closure(L, cp_filters(L))
    ISO = intersection_closure(L, scott_open_filters(L))
    principals = [principal(L, a) for a in range(L.n)]
    entries = [
        _inclusion("regular ⊆ exact", R, E),
        _inclusion("exact ⊆ strongly exact", E, SE),
        _inclusion("I(completely prime) ⊆ I(Scott-open)", ICP, ISO),
        _inclusion("I(Scott-open) ⊆ strongly exact", ISO, SE),
        _inclusion("regular ⊆ strongly exact", R, SE),
    ]
    subfit = is_subfit(L)
    principal_regular = _carriers(principals) <= _carriers(R)
    entries.append({
        "name": "subfit ⟺ principal filters are regular",
        "holds": subfit == principal_regular,
        "witness": [subfit, principal_regular],
    })
    entries.append({
        "name": "principal filters ⊆ I(completely prime)",
        "holds": _carriers(principals) <= _carriers(ICP),
        "witness": [],
    })
    entries.append({
        "name": "principal filters ⊆ I(Scott-open)",
        "holds": _carriers(principals) <= _carriers(ISO),
        "witness": [],
    })
    ff = filter_frame(L)
    generated = generate_sublocale(ff.lattice, ff.mask(principals))
    entries.append({
        "name": "exact filters = sublocale of Filt(L) generated by principal filters",
        "holds": ff.unmask(generated.carrier) == E,
        "witness": [F.carrier for F in ff.unmask(generated.carrier)][:4],
    })
    for name, fam in (("regular", R), ("exact", E), ("strongly exact", SE)):
        entries.append({
            "name": f"{name} filters form a sublocale of Filt(L)",
            "holds": is_sublocale(ff.lattice, ff.mask(fam)),
            "witness": [],
        })
    return {
        "subfit": subfit,
        "counts": {"all": L.n, "regular": len(R), "exact": len(E), "strongly_exact": len(SE),
                   "cp": len(cp_filters(L)), "scott_open": len(scott_open_filters(L))},
        "entries": entries,
        "holds": all(e["holds"] for e in entries),
    }
