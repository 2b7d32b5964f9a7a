"""Finite topological spaces and their passage to frames and Raney extensions.

Separation axioms are evaluated by their point-set definitions and then
compared with the filter-side characterizations. Functions that build Raney
extensions import :mod:`raneylab.raney` lazily because that module needs
:class:`FinSpace` for spectra.
"""

from __future__ import annotations

import functools
import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .birkhoff import canonical_key, enumerate_posets, upsets
from .errors import NotATopology, NotT0, OracleMismatch, UnknownPoint
from .filters import (
    Filter,
    cp_filters,
    exact_filters,
    intersection_closure,
    regular_filters,
)
from .order import FinLattice, FinPoset, bits, lattice_of_sets, mask_of, popcount


class FinSpace:
    """A finite set of points 0..n-1 with a topology given by its open bitsets."""

    def __init__(self, n: int, opens: Iterable[int], labels: Sequence[str] | None = None):
        full = (1 << n) - 1
        fam = set(opens)
        if 0 not in fam or full not in fam:
            raise NotATopology("the empty set and the whole space must be open")
        for U in fam:
            if U & ~full:
                raise NotATopology(f"open {U:#b} mentions points outside 0..{n - 1}")
        for U in fam:
            for V in fam:
                if U | V not in fam or U & V not in fam:
                    raise NotATopology(f"opens {U:#b} and {V:#b} break closure under ∪ or ∩")
        self.n = n
        self.full = full
        self.opens: tuple[int, ...] = tuple(sorted(fam, key=lambda U: (popcount(U), U)))
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise ValueError("one label per point")
        self.open_index = {U: i for i, U in enumerate(self.opens)}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FinSpace) and (self.n, self.opens) == (other.n, other.opens)

    def __hash__(self) -> int:
        return hash((self.n, self.opens))

    def __repr__(self) -> str:
        return f"FinSpace(n={self.n}, opens={[self.show(U) for U in self.opens]})"

    def show(self, S: int) -> str:
        return "{" + ",".join(self.labels[i] for i in bits(S)) + "}"

    def is_open(self, S: int) -> bool:
        return S in self.open_index

    def is_closed(self, S: int) -> bool:
        return self.full & ~S in self.open_index

    def closure(self, S: int) -> int:
        """Smallest closed superset: the complement of the union of opens missing S."""
        interior_of_rest = 0
        for U in self.opens:
            if not U & S:
                interior_of_rest |= U
        return self.full & ~interior_of_rest

    def up(self, x: int) -> int:
        """↑x, the intersection of the open neighbourhoods of x."""
        acc = self.full
        for U in self.opens:
            if U >> x & 1:
                acc &= U
        return acc

    @functools.cached_property
    def omega(self) -> FinLattice:
        return lattice_of_sets(list(self.opens), [self.show(U) for U in self.opens])


def _require_point(X: FinSpace, x: int) -> None:
    if not 0 <= x < X.n:
        raise UnknownPoint(f"point {x} not in a {X.n}-point space")


# --- fixtures -----------------------------------------------------------------


def sierpinski() -> FinSpace:
    """Points x, y with {y} the only proper nontrivial open."""
    return FinSpace(2, [0b00, 0b10, 0b11], ["x", "y"])


def discrete(k: int) -> FinSpace:
    return FinSpace(k, range(1 << k), [f"p{i}" for i in range(k)])


def indiscrete(k: int) -> FinSpace:
    return FinSpace(k, {0, (1 << k) - 1}, [f"p{i}" for i in range(k)])


def point() -> FinSpace:
    return FinSpace(1, [0, 1], ["*"])


def alexandrov_space(P: FinPoset) -> FinSpace:
    """Opens are the upsets of P, so the specialization order is P itself."""
    return FinSpace(P.n, upsets(P), P.labels)


def V3() -> FinSpace:
    """Upsets of ⊥ < x, ⊥ < y."""
    from .fixtures import poset_V

    return alexandrov_space(poset_V())


def doubled_sierpinski() -> FinSpace:
    """Sierpiński space with its closed point duplicated; not T0."""
    return FinSpace(3, [0b000, 0b100, 0b111], ["x", "x'", "y"])


def t0_spaces(max_points: int):
    """One finite T0 space per homeomorphism class, via Alexandrov topologies of posets."""
    for k in range(1, max_points + 1):
        for P in enumerate_posets(k, cap=max_points):
            yield alexandrov_space(P)


# --- specialization and saturated sets ------------------------------------------


@dataclass(frozen=True)
class Preorder:
    up: tuple[int, ...]

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    @property
    def is_order(self) -> bool:
        return all(
            not (self.leq(x, y) and self.leq(y, x))
            for x in range(len(self.up)) for y in range(x + 1, len(self.up))
        )

    def as_poset(self, labels=None) -> FinPoset:
        if not self.is_order:
            raise NotT0("specialization preorder is not antisymmetric")
        return FinPoset(self.up, labels)


def _t0_literal(X: FinSpace) -> bool:
    return all(
        any((U >> x & 1) != (U >> y & 1) for U in X.opens)
        for x in range(X.n) for y in range(x + 1, X.n)
    )


def specialization(X: FinSpace) -> Preorder:
    """x <= y iff every open containing x contains y."""
    order = Preorder(tuple(
        mask_of(y for y in range(X.n) if all(U >> y & 1 for U in X.opens if U >> x & 1))
        for x in range(X.n)
    ))
    if order.is_order != _t0_literal(X):
        raise OracleMismatch("antisymmetry of the specialization order disagrees with T0")
    return order


def saturated_sets(X: FinSpace) -> tuple[int, ...]:
    """U(X): upsets of the specialization order, compared with intersections of opens."""
    spec = specialization(X)
    ups = {S for S in range(1 << X.n) if all(not spec.up[x] & ~S for x in bits(S))}
    inter = set(X.opens)
    while True:
        new = {A & B for A in inter for B in inter} - inter
        if not new:
            break
        inter |= new
    # an upset is the union of the ↑x it contains
    unions = {mask_of([])}
    for S in range(1 << X.n):
        acc = 0
        for x in bits(S):
            acc |= X.up(x)
        unions.add(acc)
    if not ups == unions == inter:
        raise OracleMismatch("saturated sets: upsets, unions of ↑x and intersections of opens disagree")
    return tuple(sorted(ups, key=lambda S: (popcount(S), S)))


def omega(X: FinSpace) -> FinLattice:
    return X.omega


def saturated(X: FinSpace) -> FinLattice:
    sats = saturated_sets(X)
    return lattice_of_sets(list(sats), [X.show(S) for S in sats])


# --- neighbourhood filters --------------------------------------------------------


def up_omega(X: FinSpace, S: int) -> int:
    """↑^Ω S = {U open : S ⊆ U}, as a bitset over the indices of Ω(X)."""
    return mask_of(i for i, U in enumerate(X.opens) if not S & ~U)


def neighborhood_filter(X: FinSpace, x: int) -> Filter:
    _require_point(X, x)
    F = Filter(mask_of(i for i, U in enumerate(X.opens) if U >> x & 1), X.omega)
    if F.carrier not in {P.carrier for P in cp_filters(X.omega)}:
        raise OracleMismatch(f"N({X.labels[x]}) is not completely prime")
    return F


# --- separation axioms ---------------------------------------------------------------


def is_T0(X: FinSpace) -> bool:
    return specialization(X).is_order


def is_T1(X: FinSpace) -> bool:
    """Singletons are closed; compared with U(X) = P(X) and, for T0, regular N(x)."""
    direct = all(X.is_closed(1 << x) for x in range(X.n))
    powerset = len(saturated_sets(X)) == 1 << X.n
    if direct != powerset:
        raise OracleMismatch("T1: closed points and U(X) = P(X) disagree")
    if is_T0(X):
        reg = {F.carrier for F in regular_filters(X.omega)}
        via_filters = all(neighborhood_filter(X, x).carrier in reg for x in range(X.n))
        if direct != via_filters:
            raise OracleMismatch("T1: closed points and regular neighbourhood filters disagree")
    return direct


def td_witness(X: FinSpace, x: int) -> tuple[int, int] | None:
    """Opens U, V with U ∖ V = {x}, if any."""
    for U in X.opens:
        for V in X.opens:
            if U & ~V == 1 << x:
                return U, V
    return None


def is_TD(X: FinSpace) -> bool:
    """Every point is a difference of two opens; for T0, compared with exact N(x)."""
    direct = all(td_witness(X, x) is not None for x in range(X.n))
    if is_T0(X):
        ex = {F.carrier for F in exact_filters(X.omega)}
        via_filters = all(neighborhood_filter(X, x).carrier in ex for x in range(X.n))
        if direct != via_filters:
            raise OracleMismatch("T_D: open differences and exact neighbourhood filters disagree")
    return direct


def _closed_sets(X: FinSpace) -> list[int]:
    return [X.full & ~U for U in X.opens]


def is_irreducible(X: FinSpace, C: int) -> bool:
    """Nonempty closed set that is not the union of two proper closed subsets."""
    if not C:
        return False
    proper = [D for D in _closed_sets(X) if D != C and not D & ~C]
    return not any(A | B == C for A in proper for B in proper)


def is_sober_space(X: FinSpace) -> bool:
    """Every irreducible closed set is the closure of exactly one point."""
    for C in _closed_sets(X):
        if is_irreducible(X, C):
            generic = [x for x in bits(C) if X.closure(1 << x) == C]
            if len(generic) != 1:
                return False
    return True


def is_scattered_frame(L: FinLattice) -> bool:
    """S(L) is Boolean; compared with the spatial oracle, a powerset on finite frames."""
    from .sublocales import all_sublocales

    coframe = all_sublocales(L)
    direct = coframe.lattice.is_boolean
    if not direct:
        raise OracleMismatch("S(L) of a finite frame should be a powerset of primes")
    return direct


# --- maps between spaces ---------------------------------------------------------------


def is_continuous(X: FinSpace, Y: FinSpace, f: Sequence[int]) -> bool:
    return all(
        X.is_open(mask_of(x for x in range(X.n) if V >> f[x] & 1)) for V in Y.opens
    )


def is_open_map(X: FinSpace, Y: FinSpace, f: Sequence[int]) -> bool:
    return all(Y.is_open(mask_of(f[x] for x in bits(U))) for U in X.opens)


def is_homeomorphism(X: FinSpace, Y: FinSpace, f: Sequence[int]) -> bool:
    return (
        X.n == Y.n
        and sorted(f) == list(range(Y.n))
        and is_continuous(X, Y, f)
        and is_open_map(X, Y, f)
    )


def homeomorphic(X: FinSpace, Y: FinSpace) -> bool:
    if X.n != Y.n or len(X.opens) != len(Y.opens):
        return False
    if is_T0(X) and is_T0(Y):
        # finite T0 spaces are Alexandrov, so the specialization order decides
        return canonical_key(specialization(X).as_poset()) == canonical_key(
            specialization(Y).as_poset()
        )
    return any(is_homeomorphism(X, Y, p) for p in itertools.permutations(range(X.n)))


# --- Ω_R, ψ and φ ---------------------------------------------------------------------------


def omega_R(X: FinSpace):
    """(Ω(X), U(X)) through its filter side {↑^Ω S : S ∈ U(X)}, compared with I({N(x)})."""
    from .raney import validate_raney

    L = X.omega
    cstar = {up_omega(X, S) for S in saturated_sets(X)}
    generated = {F.carrier for F in intersection_closure(
        L, [neighborhood_filter(X, x) for x in range(X.n)]
    )}
    if cstar != generated:
        raise OracleMismatch("U(X)* differs from the ∩-closure of the neighbourhood filters")
    return validate_raney(L, cstar)


def powerset_cstar(X: FinSpace) -> set[int]:
    """{↑^Ω S : S ⊆ X}, the filter side of (Ω(X), P(X))."""
    return {up_omega(X, S) for S in range(1 << X.n)}


@dataclass(frozen=True)
class PsiReport:
    mapping: tuple[int, ...]
    continuous: bool
    injective: bool
    surjective: bool
    open: bool

    @property
    def homeomorphism(self) -> bool:
        return self.continuous and self.injective and self.surjective and self.open


def psi(X: FinSpace) -> PsiReport:
    """x ↦ ↑x into the spectrum of Ω_R(X); a homeomorphism exactly for T0 spaces."""
    from .raney import spectrum, spectrum_points

    R = omega_R(X)
    pts = spectrum_points(R)
    position = {P: i for i, P in enumerate(pts)}
    mapping = tuple(position[up_omega(X, X.up(x))] for x in range(X.n))
    for x in range(X.n):
        if pts[mapping[x]] != neighborhood_filter(X, x).carrier:
            raise OracleMismatch("↑^Ω ↑x differs from N(x)")
    S = spectrum(R)
    report = PsiReport(
        mapping,
        is_continuous(X, S, mapping),
        len(set(mapping)) == X.n,
        set(mapping) == set(range(S.n)),
        is_open_map(X, S, mapping),
    )
    if report.homeomorphism != is_T0(X):
        raise OracleMismatch("ψ is a homeomorphism exactly for T0 spaces")
    return report


@dataclass(frozen=True)
class PhiReport:
    mapping: tuple[int, ...]
    injective: bool
    surjective: bool
    order_embedding: bool

    @property
    def isomorphism(self) -> bool:
        return self.injective and self.surjective and self.order_embedding


def phi(R) -> PhiReport:
    """c ↦ {points below c}, from C* to the filter side of Ω_R(spectrum(R)).

    ``mapping[i]`` indexes the image of ``R.cstar[i]`` in the target's C*.
    """
    from .raney import is_spatial, spectrum, spectrum_points

    pts = spectrum_points(R)
    S = spectrum(R)
    # a point P lies below X in C exactly when X ⊆ P
    images = [mask_of(i for i, P in enumerate(pts) if not X & ~P) for X in R.cstar]
    for a in range(R.base.n):
        if images[R.index(R.base.up[a])] != mask_of(i for i, P in enumerate(pts) if P >> a & 1):
            raise OracleMismatch("φ on L differs from the topologizing map")
    target = omega_R(S)
    position = {X: i for i, X in enumerate(target.cstar)}
    mapping = tuple(position.get(up_omega(S, T), -1) for T in images)
    if -1 in mapping:
        raise OracleMismatch("φ(c) is not saturated in the spectrum")
    report = PhiReport(
        mapping,
        len(set(mapping)) == len(mapping),
        set(mapping) == set(range(len(target.cstar))),
        all(
            (not X & ~Y) == (not images[j] & ~images[i])
            for i, X in enumerate(R.cstar) for j, Y in enumerate(R.cstar)
        ),
    )
    if report.isomorphism != is_spatial(R):
        raise OracleMismatch("φ is an isomorphism exactly for spatial extensions")
    return report


# --- T_D characterization, T1 powerset, pt round trip -----------------------------


def chartd_conditions(X: FinSpace) -> dict[str, bool]:
    """The five equivalent T_D conditions for a T0 space; non-T0 input is refused."""
    from .order import family_table
    from .raney import is_compact, is_dense

    if not is_T0(X):
        raise NotT0("the T_D characterization is stated for T0 spaces")
    L = X.omega
    R = omega_R(X)
    E = exact_filters(L)
    dense = is_dense(R, E)
    sats = set(saturated_sets(X))
    t = family_table(L)
    preserves = True
    for k, m in enumerate(t.masks):
        if t.exact[k]:
            inter = X.full
            for i in bits(m):
                inter &= X.opens[i]
            # the meet in Ω(X) must already be the intersection computed in U(X)
            if X.opens[int(t.meets[k])] != inter or inter not in sats:
                preserves = False
                break
    return {
        "td": is_TD(X),
        "e_dense": dense,
        "e_canonical": dense and is_compact(R, E),
        "is_filt_e": set(R.cstar) == {F.carrier for F in E},
        "preserves_exact_meets": preserves,
    }


def t1_powerset_check(X: FinSpace) -> bool:
    """For T1 X: U(X)* = P(X)* = Filt_R(Ω(X))."""
    if not is_T1(X):
        raise ValueError("the powerset identity is stated for T1 spaces")
    R = omega_R(X)
    reg = {F.carrier for F in regular_filters(X.omega)}
    return set(R.cstar) == powerset_cstar(X) == reg


def pt_round_trip(X: FinSpace) -> tuple[int, ...] | None:
    """x ↦ N(x) as a map X → pt(Ω(X)); returned when it is a homeomorphism."""
    from .raney import pt_space, pt_points

    L = X.omega
    pts = pt_points(L)
    position = {P: i for i, P in enumerate(pts)}
    mapping = tuple(position.get(neighborhood_filter(X, x).carrier, -1) for x in range(X.n))
    if -1 in mapping:
        return None
    return mapping if is_homeomorphism(X, pt_space(L), mapping) else None
