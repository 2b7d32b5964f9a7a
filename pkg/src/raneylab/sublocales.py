"""Sublocales of a finite frame and the coframe S(L) they form.

A sublocale is stored as the bitset of its carrier inside the host frame.
S(L) is enumerated through prime elements: a finite frame is spatial, so each
sublocale is the meet-closure of the primes it contains.  Raw filtering of
all 2^|L| subsets is kept as an oracle for small hosts.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from . import config
from .errors import OracleMismatch, SizeCap
from .order import (
    FinLattice,
    FinPoset,
    as_mask,
    bits,
    codifference,
    covered_primes,
    family_table,
    heyting_table,
    lattice_cached,
    lattice_of_sets,
    mask_of,
    meet_closure,
    popcount,
    primes,
    reduce_over,
    validate_lattice,
)


@dataclass(frozen=True)
class Sublocale:
    """Carrier bitset of a sublocale. Equality ignores the host."""

    carrier: int
    host: FinLattice = field(compare=False, repr=False)

    def __contains__(self, x: int) -> bool:
        return bool(self.carrier >> x & 1)

    def __len__(self) -> int:
        return popcount(self.carrier)

    def __le__(self, other: Sublocale) -> bool:
        return not self.carrier & ~other.carrier

    def __lt__(self, other: Sublocale) -> bool:
        return self <= other and self.carrier != other.carrier

    def elements(self) -> list[int]:
        return list(bits(self.carrier))

    def labels(self) -> list[str]:
        return [self.host.labels[i] for i in bits(self.carrier)]


def _same_host(*subs: Sublocale) -> FinLattice:
    host = subs[0].host
    if any(S.host is not host for S in subs):
        raise ValueError("sublocales live in different frames")
    return host


def is_sublocale(L: FinLattice, S: int | Iterable[int]) -> bool:
    """Contains the top, closed under meets, and x → s ∈ S for all x ∈ L, s ∈ S."""
    S = as_mask(S)
    if not S >> L.top & 1:
        return False
    imp = heyting_table(L)
    for s in bits(S):
        for t in bits(S):
            if not S >> L.meet[s][t] & 1:
                return False
        for x in range(L.n):
            if not S >> imp[x][s] & 1:
                return False
    return True


def make_sublocale(L: FinLattice, S: int | Iterable[int]) -> Sublocale:
    S = as_mask(S)
    if not is_sublocale(L, S):
        raise ValueError(f"{sorted(bits(S))} is not a sublocale")
    return Sublocale(S, L)


def generate_sublocale(L: FinLattice, X: int | Iterable[int]) -> Sublocale:
    """Smallest sublocale containing X: all meets of {a → x : a ∈ L, x ∈ X}."""
    imp = heyting_table(L)
    gens = 0
    for x in bits(as_mask(X)):
        for a in range(L.n):
            gens |= 1 << imp[a][x]
    return Sublocale(meet_closure(L, gens) | 1 << L.top, L)


def open_s(L: FinLattice, a: int) -> Sublocale:
    """o(a) = {a → b : b ∈ L}."""
    imp = heyting_table(L)
    return Sublocale(mask_of(imp[a][b] for b in range(L.n)), L)


def closed_s(L: FinLattice, a: int) -> Sublocale:
    """c(a) = ↑a."""
    return Sublocale(L.up[a], L)


def boolean_s(L: FinLattice, a: int) -> Sublocale:
    """b(a) = {x → a : x ∈ L}."""
    imp = heyting_table(L)
    return Sublocale(mask_of(imp[x][a] for x in range(L.n)), L)


def whole(L: FinLattice) -> Sublocale:
    return Sublocale(L.full, L)


def trivial(L: FinLattice) -> Sublocale:
    return Sublocale(1 << L.top, L)


# --- the coframe S(L) ---------------------------------------------------------


@lattice_cached
def raw_sublocales(L: FinLattice) -> tuple[int, ...]:
    """Every sublocale by filtering all subsets. Oracle only."""
    if L.n > config.RAW_ORACLE_LIMIT:
        raise SizeCap(f"raw sublocale filtering is limited to {config.RAW_ORACLE_LIMIT} elements")
    return tuple(S for S in range(1 << L.n) if is_sublocale(L, S))


def minimal_sublocale_oracle(L: FinLattice, X: int | Iterable[int]) -> int:
    """Intersection of all sublocales containing X, by raw filtering."""
    X = as_mask(X)
    acc = L.full
    for S in raw_sublocales(L):
        if not X & ~S:
            acc &= S
    return acc


@dataclass(frozen=True, eq=False)
class SublocaleCoframe:
    """S(L) with its order as a :class:`FinLattice` over member indices."""

    host: FinLattice
    members: tuple[Sublocale, ...]
    lattice: FinLattice
    prime_list: tuple[int, ...]
    prime_sets: tuple[int, ...]
    positions: dict = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "positions", {S.carrier: i for i, S in enumerate(self.members)})

    def index(self, S: Sublocale | int) -> int:
        carrier = S.carrier if isinstance(S, Sublocale) else S
        return self.positions[carrier]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def _carrier_of_primes(L: FinLattice, prime_mask: int) -> int:
    return meet_closure(L, prime_mask) | 1 << L.top


@lattice_cached
def all_sublocales(L: FinLattice) -> SublocaleCoframe:
    """The coframe S(L), built from sets of primes and checked against oracles."""
    config.require_elements(L.n, "all_sublocales")
    ps = tuple(sorted(primes(L)))
    carriers = []
    for q in range(1 << len(ps)):
        S = _carrier_of_primes(L, mask_of(ps[i] for i in bits(q)))
        if not is_sublocale(L, S):
            raise OracleMismatch(f"meet-closure of primes {q:#b} is not a sublocale")
        carriers.append(S)
    if len(set(carriers)) != len(carriers):
        raise OracleMismatch("distinct prime sets produced the same sublocale")
    if L.n <= config.RAW_ORACLE_LIMIT and set(raw_sublocales(L)) != set(carriers):
        raise OracleMismatch("prime-set enumeration disagrees with raw subset filtering")
    order = sorted(range(len(carriers)), key=lambda q: (popcount(carriers[q]), carriers[q]))
    members = tuple(Sublocale(carriers[q], L) for q in order)
    lat = lattice_of_sets([S.carrier for S in members], [_fmt(L, S.carrier) for S in members])
    if not lat.is_distributive:
        raise OracleMismatch("S(L) failed the distributive law")
    coframe = SublocaleCoframe(L, members, lat, ps, tuple(order))
    _check_spatial_oracle(coframe)
    for i, S in enumerate(members):
        for j, T in enumerate(members):
            if members[lat.join[i][j]].carrier != join_s(S, T).carrier:
                raise OracleMismatch("join_s disagrees with the least upper bound in S(L)")
            if members[lat.meet[i][j]].carrier != S.carrier & T.carrier:
                raise OracleMismatch("meets in S(L) are not intersections")
    return coframe


def _fmt(L: FinLattice, carrier: int) -> str:
    return "{" + ",".join(L.labels[i] for i in bits(carrier)) + "}"


def _check_spatial_oracle(coframe: SublocaleCoframe) -> None:
    L = coframe.host
    bp = {p: boolean_s(L, p).carrier for p in coframe.prime_list}
    for S, q in zip(coframe.members, coframe.prime_sets):
        got = mask_of(i for i, p in enumerate(coframe.prime_list) if not bp[p] & ~S.carrier)
        if got != q:
            raise OracleMismatch(f"spatial oracle sends {_fmt(L, S.carrier)} to {got:#b}, expected {q:#b}")
    for S, q in zip(coframe.members, coframe.prime_sets):
        for T, r in zip(coframe.members, coframe.prime_sets):
            if (S <= T) != (not q & ~r):
                raise OracleMismatch("spatial oracle is not an order isomorphism")


def spatial_oracle(L: FinLattice) -> dict[Sublocale, frozenset[int]]:
    """S ↦ {p prime : b(p) ⊆ S}; an order isomorphism S(L) ≅ P(primes(L))."""
    coframe = all_sublocales(L)
    return {
        S: frozenset(coframe.prime_list[i] for i in bits(q))
        for S, q in zip(coframe.members, coframe.prime_sets)
    }


# --- operations in S(L) ---------------------------------------------------------


def meet_s(S: Sublocale, T: Sublocale) -> Sublocale:
    return Sublocale(S.carrier & T.carrier, _same_host(S, T))


def join_s(S: Sublocale, T: Sublocale) -> Sublocale:
    """All meets of subsets of S ∪ T."""
    L = _same_host(S, T)
    return Sublocale(meet_closure(L, S.carrier | T.carrier) | 1 << L.top, L)


def join_all(L: FinLattice, subs: Iterable[Sublocale]) -> Sublocale:
    acc = 1 << L.top
    for S in subs:
        acc |= S.carrier
    return Sublocale(meet_closure(L, acc) | 1 << L.top, L)


def difference_s(S: Sublocale, T: Sublocale) -> Sublocale:
    """S ∖ T: intersection of every U ∈ S(L) with S ⊆ T ∨ U."""
    L = _same_host(S, T)
    coframe = all_sublocales(L)
    acc = L.full
    for U in coframe.members:
        if S <= join_s(T, U):
            acc &= U.carrier
    result = Sublocale(acc, L)
    via_lattice = coframe.members[codifference(coframe.lattice, coframe.index(S), coframe.index(T))]
    if via_lattice != result:
        raise OracleMismatch("difference formula disagrees with the coframe codifference")
    return result


def supplement_s(S: Sublocale) -> Sublocale:
    """S* = L ∖ S."""
    return difference_s(whole(S.host), S)


def closure_s(S: Sublocale) -> Sublocale:
    """Smallest closed sublocale containing S: ↑⋀S."""
    L = S.host
    return closed_s(L, L.meet_of(S.carrier))


def fitting_s(S: Sublocale) -> Sublocale:
    """Intersection of all open sublocales containing S."""
    L = S.host
    acc = L.full
    for x in range(L.n):
        o = open_s(L, x)
        if S <= o:
            acc &= o.carrier
    return Sublocale(acc, L)


def is_complemented(coframe: SublocaleCoframe, S: Sublocale) -> bool:
    lat = coframe.lattice
    i = coframe.index(S)
    return any(lat.meet[i][j] == lat.bot and lat.join[i][j] == lat.top for j in range(lat.n))


def is_linear(lat: FinLattice, c: int) -> bool:
    """(x ∨ y) ∧ c = (x ∧ c) ∨ (y ∧ c) for all x, y; finite joins reduce to this."""
    M, J = lat.meet, lat.join
    return all(
        M[J[x][y]][c] == J[M[x][c]][M[y][c]] for x in range(lat.n) for y in range(lat.n)
    )


def _close_under(L: FinLattice, seeds: set[int], op) -> set[int]:
    family = set(seeds)
    while True:
        new = {op(a, b) for a in family for b in family} - family
        if not new:
            return family
        family |= new


def joins_of_closed(L: FinLattice) -> tuple[Sublocale, ...]:
    """S_c(L): closed sublocales closed under joins."""
    seeds = {closed_s(L, a).carrier for a in range(L.n)}
    fam = _close_under(L, seeds | {1 << L.top}, lambda a, b: meet_closure(L, a | b) | 1 << L.top)
    return tuple(Sublocale(c, L) for c in sorted(fam, key=lambda c: (popcount(c), c)))


def fitted(L: FinLattice) -> tuple[Sublocale, ...]:
    """S_o(L): intersections of open sublocales (the empty one being L)."""
    seeds = {open_s(L, a).carrier for a in range(L.n)} | {L.full}
    fam = _close_under(L, seeds, lambda a, b: a & b)
    return tuple(Sublocale(c, L) for c in sorted(fam, key=lambda c: (popcount(c), c)))


def joins_of_complemented(L: FinLattice) -> tuple[Sublocale, ...]:
    """S_b(L): joins of complemented elements of S(L)."""
    coframe = all_sublocales(L)
    seeds = {S.carrier for S in coframe.members if is_complemented(coframe, S)}
    fam = _close_under(L, seeds | {1 << L.top}, lambda a, b: meet_closure(L, a | b) | 1 << L.top)
    return tuple(Sublocale(c, L) for c in sorted(fam, key=lambda c: (popcount(c), c)))


# --- surjections, exact and D-sublocales -------------------------------------------


def surjection_of(S: Sublocale) -> tuple[int, ...]:
    """σ(x) = ⋀{s ∈ S : x <= s}; checked to preserve finite meets and be onto S."""
    L = S.host
    sigma = tuple(L.meet_of(S.carrier & L.up[x]) for x in range(L.n))
    if sigma[L.top] != L.top or mask_of(sigma) != S.carrier:
        raise OracleMismatch("σ_S does not fix the top or is not onto S")
    for a in range(L.n):
        for b in range(L.n):
            if sigma[L.meet[a][b]] != L.meet[sigma[a]][sigma[b]]:
                raise OracleMismatch(f"σ_S fails to preserve the meet of {a} and {b}")
    return sigma


def _closed_trace_table(S: Sublocale) -> np.ndarray:
    """T[a, x] is c(a) ∩ S ⊆ c(x)."""
    L = S.host
    T = np.zeros((L.n, L.n), dtype=bool)
    for a in range(L.n):
        trace = S.carrier & L.up[a]
        for x in range(L.n):
            T[a, x] = not trace & ~L.up[x]
    return T


def exact_sublocale_violations(S: Sublocale, families: Sequence[int] | None = None) -> dict:
    """Witnesses against exactness of S via both routes.

    ``characterization``: exact families X and x with c(x_i) ∩ S ⊆ c(x) for all i
    but c(⋀X) ∩ S ⊄ c(x).  ``surjection``: exact families where σ_S(⋀X) differs
    from ⋀σ_S(X).
    """
    L = S.host
    table = family_table(L)
    if families is None:
        masks = table.masks
        F, meets, exact = table.F, table.meets, table.exact
    else:
        from .order import indicator, is_exact_meet

        masks = tuple(families)
        F = indicator(masks, L.n)
        meets = np.array([L.meet_of(m) for m in masks], dtype=np.int64)
        exact = np.array([is_exact_meet(L, m) for m in masks], dtype=bool)
    T = _closed_trace_table(S)
    outside = (~T).astype(np.int64)
    premise = (F.astype(np.int64) @ outside) == 0  # [k, x]
    conclusion = T[meets, :]
    bad = exact[:, None] & premise & ~conclusion
    char = [(masks[k], int(x)) for k, x in np.argwhere(bad)]
    sigma = np.asarray(surjection_of(S), dtype=np.int64)
    M = np.asarray(L.meet, dtype=np.int64)
    image_meet = reduce_over(M, F, sigma, L.top)
    surj_bad = exact & (sigma[meets] != image_meet)
    surj = [masks[k] for k in np.flatnonzero(surj_bad)]
    return {"characterization": char, "surjection": surj}


def is_exact_sublocale(L: FinLattice, S: Sublocale, families: Sequence[int] | None = None) -> bool:
    """σ_S preserves exact meets, via the closed-sublocale characterization.

    Both the characterization and a direct check on σ_S are evaluated over the
    same families and must agree.
    """
    if S.host is not L:
        raise ValueError("sublocale belongs to another frame")
    v = exact_sublocale_violations(S, families)
    char_ok = not v["characterization"]
    surj_ok = not v["surjection"]
    if char_ok != surj_ok:
        raise OracleMismatch(f"exactness routes disagree for {_fmt(L, S.carrier)}: {v}")
    return char_ok


def sublocale_frame(S: Sublocale) -> tuple[FinLattice, tuple[int, ...]]:
    """S as a frame in its own right, with the list of host indices."""
    L = S.host
    elems = tuple(bits(S.carrier))
    up = [mask_of(j for j, t in enumerate(elems) if L.leq(s, t)) for s in elems]
    return validate_lattice(FinPoset(up, [L.labels[s] for s in elems])), elems


def is_D_sublocale(L: FinLattice, S: Sublocale) -> bool:
    """The right adjoint of σ_S (the inclusion) sends covered primes of S to covered primes of L."""
    if S.host is not L:
        raise ValueError("sublocale belongs to another frame")
    frame, elems = sublocale_frame(S)
    target = covered_primes(L)
    return all(elems[p] in target for p in covered_primes(frame))


@lattice_cached
def exact_sublocales(L: FinLattice) -> tuple[Sublocale, ...]:
    return tuple(S for S in all_sublocales(L) if is_exact_sublocale(L, S))


@lattice_cached
def d_sublocales(L: FinLattice) -> tuple[Sublocale, ...]:
    return tuple(S for S in all_sublocales(L) if is_D_sublocale(L, S))
