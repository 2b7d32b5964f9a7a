"""Raney extensions of finite frames, represented by their filter side C*.

An extension (L, C) is stored as the family C* of filters ↑^L c, c ∈ C.
The coframe C is C* under reverse inclusion: joins in C are intersections
and the meet ⋀F of a filter F is its closure, the least member of C*
containing F.  Nothing about C is computed any other way.
"""

from __future__ import annotations

import functools
import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from . import config
from .errors import (
    MissingPrincipal,
    NotAFrameMap,
    NotStronglyExact,
    NotSubcolocale,
    NotSubfit,
    OracleMismatch,
    SizeCap,
)
from .filters import (
    Filter,
    all_filters,
    cp_filters,
    exact_filters,
    filter_frame,
    filter_heyting_table,
    intersection_closure,
    is_filter,
    regular_filters,
    strongly_exact_filters,
)
from .order import (
    FinLattice,
    bits,
    covered_primes,
    family_table,
    is_exact_meet,
    is_subfit,
    lattice_cached,
    lattice_of_sets,
    mask_of,
    maximal_primes,
    popcount,
)
from .spaces import FinSpace, saturated_sets
from .sublocales import (
    closed_s,
    fitted,
    is_sublocale,
    join_all,
    joins_of_closed,
    open_s,
)


def _carrier(F: Filter | int) -> int:
    return F.carrier if isinstance(F, Filter) else F


def _sorted(carriers: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(carriers), key=lambda c: (popcount(c), c)))


@dataclass(frozen=True, eq=False)
class RaneyExt:
    base: FinLattice
    cstar: tuple[int, ...]
    positions: dict = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "cstar", _sorted(self.cstar))
        object.__setattr__(self, "positions", {X: i for i, X in enumerate(self.cstar)})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RaneyExt) and self.base is other.base and self.cstar == other.cstar

    def __hash__(self) -> int:
        return hash(self.cstar)

    def __len__(self) -> int:
        return len(self.cstar)

    def __contains__(self, F: Filter | int) -> bool:
        return _carrier(F) in self.positions

    def index(self, F: Filter | int) -> int:
        return self.positions[_carrier(F)]

    @property
    def members(self) -> tuple[Filter, ...]:
        return tuple(Filter(X, self.base) for X in self.cstar)

    def closure(self, X: int) -> int:
        """Least member of C* containing X, i.e. ↑^L ⋀X."""
        acc = self.base.full
        for Y in self.cstar:
            if not X & ~Y:
                acc &= Y
        if acc not in self.positions:
            raise OracleMismatch("C* is not closed under intersections")
        return acc

    @functools.cached_property
    def coframe(self) -> FinLattice:
        """C itself: the members of C* under reverse inclusion."""
        full = self.base.full
        labels = [Filter(X, self.base).label() for X in self.cstar]
        return lattice_of_sets([full & ~X for X in self.cstar], labels)


# --- validity ---------------------------------------------------------------------


def validate_raney(L: FinLattice, filters: Iterable[Filter | int]) -> RaneyExt:
    """Check the three conditions on a filter family and wrap it as an extension.

    Raises MissingPrincipal, NotSubcolocale or NotStronglyExact.
    """
    fam = {_carrier(F) for F in filters}
    for X in fam:
        if not is_filter(L, X):
            raise NotSubcolocale({"kind": "not a filter", "carrier": X})
    for a in range(L.n):
        if L.up[a] not in fam:
            raise MissingPrincipal(a)
    ff = filter_frame(L)
    imp = filter_heyting_table(L)
    for X in fam:
        for Y in fam:
            if X & Y not in fam:
                raise NotSubcolocale({"kind": "intersection", "F": X, "G": Y})
    for G in ff.filters:
        g = ff.index(G)
        for X in fam:
            H = ff.filters[imp[g][ff.index(X)]].carrier
            if H not in fam:
                raise NotSubcolocale({"kind": "heyting", "G": G.carrier, "F": X, "result": H})
    strong = {F.carrier for F in strongly_exact_filters(L)}
    for X in sorted(fam):
        if X not in strong:
            raise NotStronglyExact(X)
    exact = {F.carrier for F in exact_filters(L)}
    if not exact <= fam <= strong:
        raise OracleMismatch("a valid C* must lie between the exact and strongly exact filters")
    return RaneyExt(L, tuple(fam))


@lattice_cached
def enumerate_raney(L: FinLattice) -> tuple[RaneyExt, ...]:
    """Every C* between Filt_E(L) and Filt_SE(L) that is a sublocale of Filt(L)."""
    config.require_elements(L.n, "enumerate_raney")
    E = {F.carrier for F in exact_filters(L)}
    SE = {F.carrier for F in strongly_exact_filters(L)}
    free = sorted(SE - E)
    if len(free) > 16:
        raise SizeCap(f"{len(free)} strongly exact but not exact filters")
    ff = filter_frame(L)
    out = []
    for r in range(len(free) + 1):
        for extra in itertools.combinations(free, r):
            fam = E | set(extra)
            if is_sublocale(ff.lattice, ff.mask(fam)):
                out.append(validate_raney(L, fam))
    if len(out) != 1:
        raise OracleMismatch(f"{len(out)} Raney extensions on a finite frame")
    return tuple(out)


def unique_extension(L: FinLattice) -> RaneyExt:
    return enumerate_raney(L)[0]


def closure_operator_violations(R: RaneyExt) -> list[str]:
    """↑^L ∘ ⋀ must be a closure operator on Filt(L) whose fixpoints are C*."""
    out = []
    fs = [F.carrier for F in all_filters(R.base)]
    cl = {X: R.closure(X) for X in fs}
    for X in fs:
        if X & ~cl[X]:
            out.append(f"not extensive at {X:#b}")
        if R.closure(cl[X]) != cl[X]:
            out.append(f"not idempotent at {X:#b}")
        for Y in fs:
            if not X & ~Y and cl[X] & ~cl[Y]:
                out.append(f"not monotone at {X:#b} ⊆ {Y:#b}")
    if {X for X in fs if cl[X] == X} != set(R.cstar):
        out.append("fixpoints differ from C*")
    return out


# --- density, compactness and the separation axioms -----------------------------------


def star(R: RaneyExt, fam: Iterable[Filter | int]) -> set[int]:
    """𝓕* = {↑^L ⋀F : F ∈ 𝓕}."""
    return {R.closure(_carrier(F)) for F in fam}


def is_dense(R: RaneyExt, fam: Iterable[Filter | int]) -> bool:
    """Every element of C is a join of elements ⋀F, F ∈ fam; two routes compared."""
    fam = [_carrier(F) for F in fam]
    st = star(R, fam)
    full = R.base.full
    direct = True
    for X in R.cstar:
        # the C-join of the ⋀F below X is the intersection of those closures
        acc = full
        for Y in st:
            if not X & ~Y:
                acc &= Y
        if acc != X:
            direct = False
            break
    criterion = set(R.cstar) <= {F.carrier for F in intersection_closure(R.base, st)}
    if direct != criterion:
        raise OracleMismatch("density: join test and C* ⊆ I(𝓕*) disagree")
    return direct


def is_compact(R: RaneyExt, fam: Iterable[Filter | int]) -> bool:
    """⋀F <= a implies a ∈ F for F ∈ fam; compared with fam ⊆ C*."""
    fam = [_carrier(F) for F in fam]
    direct = all(not R.closure(F) & ~F for F in fam)
    criterion = set(fam) <= set(R.cstar)
    if direct != criterion:
        raise OracleMismatch("compactness: definition and 𝓕 ⊆ C* disagree")
    return direct


def is_canonical(R: RaneyExt, fam: Iterable[Filter | int]) -> bool:
    fam = [_carrier(F) for F in fam]
    both = is_dense(R, fam) and is_compact(R, fam)
    if both != ({F.carrier for F in intersection_closure(R.base, fam)} == set(R.cstar)):
        raise OracleMismatch("canonicity: density + compactness and I(𝓕) = C* disagree")
    return both


def completely_join_primes(R: RaneyExt) -> tuple[int, ...]:
    """Completely join-prime elements of C, compared with the CP members of C*."""
    C = R.coframe
    direct = []
    for x in range(C.n):
        if x == C.bot:
            continue
        if all(C.leq(x, y) or C.leq(x, z)
               for y in range(C.n) for z in range(C.n) if C.leq(x, C.join[y][z])):
            direct.append(R.cstar[x])
    cp = {F.carrier for F in cp_filters(R.base)}
    via_filters = [X for X in R.cstar if X in cp]
    if direct != via_filters:
        raise OracleMismatch("completely join-prime elements of C differ from CP filters in C*")
    return tuple(direct)


def is_sober(R: RaneyExt) -> bool:
    return is_compact(R, cp_filters(R.base))


def is_TD(R: RaneyExt) -> bool:
    return is_dense(R, exact_filters(R.base))


def is_T1(R: RaneyExt) -> bool:
    return R.coframe.is_boolean


def is_spatial(R: RaneyExt) -> bool:
    """C* ⊆ I(C* ∩ Filt_CP), compared with join-generation by join-primes in C."""
    pts = completely_join_primes(R)
    criterion = set(R.cstar) <= {F.carrier for F in intersection_closure(R.base, pts)}
    C = R.coframe
    jp = [R.index(X) for X in pts]
    direct = all(
        C.join_of(mask_of(j for j in jp if C.leq(j, x))) == x for x in range(C.n)
    )
    if direct != criterion:
        raise OracleMismatch("spatiality: join-generation and C* ⊆ I(C* ∩ CP) disagree")
    return direct


def axioms(R: RaneyExt) -> dict[str, bool]:
    """Sober, T_D, T_1 and spatial flags, with the finite predictions asserted."""
    out = {"sober": is_sober(R), "td": is_TD(R), "t1": is_T1(R), "spatial": is_spatial(R)}
    if not (out["sober"] and out["td"] and out["spatial"]):
        raise OracleMismatch(f"finite extension fails a finite prediction: {out}")
    if not out["t1"] == R.base.is_boolean == is_subfit(R.base):
        raise OracleMismatch("T1 extension, Boolean base and subfit base disagree")
    return out


# --- reflections ---------------------------------------------------------------------


def _reflect_into(R: RaneyExt, target: RaneyExt) -> tuple[int, ...]:
    """c ↦ cl_target(↑^L c) as indices into target.cstar."""
    return tuple(target.index(target.closure(X)) for X in R.cstar)


def sobrification(R: RaneyExt) -> tuple[RaneyExt, tuple[int, ...]]:
    """(L, I(C* ∪ Filt_CP)) with the map F ↦ ⋀F into R."""
    L = R.base
    S = validate_raney(L, intersection_closure(L, list(R.cstar) + list(cp_filters(L))))
    sigma = tuple(R.index(R.closure(X)) for X in S.cstar)
    if not is_sober(S):
        raise OracleMismatch("the sobrification is not sober")
    if S != R:
        raise OracleMismatch("a finite extension should be its own sobrification")
    return S, sigma


def td_reflection(R: RaneyExt) -> tuple[RaneyExt, tuple[int, ...]]:
    target = validate_raney(R.base, exact_filters(R.base))
    if not is_TD(target):
        raise OracleMismatch("(L, Filt_E) is not T_D")
    return target, _reflect_into(R, target)


def t1_reflection(R: RaneyExt) -> tuple[RaneyExt, tuple[int, ...]]:
    if not is_subfit(R.base):
        raise NotSubfit("T1 reflection needs a subfit base frame")
    target = validate_raney(R.base, regular_filters(R.base))
    if not is_T1(target):
        raise OracleMismatch("(L, Filt_R) is not T1")
    return target, _reflect_into(R, target)


# --- frame maps ------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FrameMap:
    src: FinLattice
    dst: FinLattice
    images: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FrameMap) and self.src is other.src and self.dst is other.dst
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return hash(self.images)


def frame_map(src: FinLattice, dst: FinLattice, images: Sequence[int]) -> FrameMap:
    """Validate that ``images`` preserves finite meets and all joins."""
    images = tuple(images)
    if len(images) != src.n or any(not 0 <= y < dst.n for y in images):
        raise NotAFrameMap("one image in the codomain per element")
    if images[src.top] != dst.top:
        raise NotAFrameMap("top not preserved")
    if images[src.bot] != dst.bot:
        raise NotAFrameMap("bottom (the empty join) not preserved")
    for x in range(src.n):
        for y in range(src.n):
            if images[src.meet[x][y]] != dst.meet[images[x]][images[y]]:
                raise NotAFrameMap(f"meet of {src.labels[x]}, {src.labels[y]} not preserved")
            if images[src.join[x][y]] != dst.join[images[x]][images[y]]:
                raise NotAFrameMap(f"join of {src.labels[x]}, {src.labels[y]} not preserved")
    return FrameMap(src, dst, images)


def identity_map(L: FinLattice) -> FrameMap:
    return frame_map(L, L, range(L.n))


def join_irreducibles(L: FinLattice) -> list[int]:
    return [x for x in range(L.n) if x != L.bot and len(_lower_covers(L, x)) == 1]


def _lower_covers(L: FinLattice, x: int) -> list[int]:
    below = L.down[x] & ~(1 << x)
    return [y for y in bits(below) if not any(
        z != y and L.leq(y, z) for z in bits(below)
    )]


def frame_maps(L: FinLattice, M: FinLattice) -> list[FrameMap]:
    """All frame maps L → M.

    Such maps correspond to monotone maps g from the join-irreducibles of M
    to those of L, via f(x) = ⋁{k : g(k) <= x}; every candidate is
    re-validated against the frame-map definition.
    """
    JL, JM = join_irreducibles(L), join_irreducibles(M)
    out = []
    for g in itertools.product(JL, repeat=len(JM)):
        if any(M.leq(JM[i], JM[j]) and not L.leq(g[i], g[j])
               for i in range(len(JM)) for j in range(len(JM))):
            continue
        images = [
            M.join_of(mask_of(JM[i] for i in range(len(JM)) if L.leq(g[i], x)))
            for x in range(L.n)
        ]
        out.append(frame_map(L, M, images))
    return out


def preimage(f: FrameMap, G: int) -> int:
    return mask_of(x for x in range(f.src.n) if G >> f.images[x] & 1)


def image(f: FrameMap, X: int) -> int:
    return mask_of(f.images[x] for x in bits(X))


def right_adjoint(f: FrameMap, m: int) -> int:
    """f_*(m) = ⋁{x : f(x) <= m}."""
    return f.src.join_of(mask_of(x for x in range(f.src.n) if f.dst.leq(f.images[x], m)))


@dataclass(frozen=True)
class Lift:
    mapping: tuple[int, ...] | None
    offending: int | None = None

    @property
    def exists(self) -> bool:
        return self.mapping is not None


def lift_frame_map(f: FrameMap, R: RaneyExt, S: RaneyExt) -> Lift:
    """Extend f to C → D when preimages of D* land in C*; refuse naming a filter otherwise."""
    if R.base is not f.src or S.base is not f.dst:
        raise NotAFrameMap("map and extensions live on different frames")
    for G in S.cstar:
        if preimage(f, G) not in R:
            return Lift(None, G)
    mapping = tuple(S.index(S.closure(image(f, X))) for X in R.cstar)
    L, M = f.src, f.dst
    for a in range(L.n):
        if mapping[R.index(L.up[a])] != S.index(M.up[f.images[a]]):
            raise OracleMismatch("the lift does not extend f")
    for i, X in enumerate(R.cstar):
        for j, Y in enumerate(R.cstar):
            # joins in C are intersections, meets are closures of unions
            if S.cstar[mapping[R.index(X & Y)]] != S.cstar[mapping[i]] & S.cstar[mapping[j]]:
                raise OracleMismatch("the lift does not preserve joins")
            m = mapping[R.index(R.closure(X | Y))]
            if S.cstar[m] != S.closure(S.cstar[mapping[i]] | S.cstar[mapping[j]]):
                raise OracleMismatch("the lift does not preserve meets")
    return Lift(mapping)


def is_exact_map(f: FrameMap) -> bool:
    """Images of exact meets are exact meets and are preserved."""
    L, M = f.src, f.dst
    t = family_table(L)
    for k, X in enumerate(t.masks):
        if not t.exact[k]:
            continue
        Y = image(f, X)
        if M.meet_of(Y) != f.images[int(t.meets[k])] or not is_exact_meet(M, Y):
            return False
    return True


def is_D_morphism(f: FrameMap) -> bool:
    """f_*(p) is a covered prime for every covered prime p of the codomain."""
    cov_src = covered_primes(f.src)
    return all(right_adjoint(f, p) in cov_src for p in covered_primes(f.dst))


# --- spectra ------------------------------------------------------------------------------


def _cp_space(L: FinLattice, points: Sequence[int]) -> FinSpace:
    opens = {mask_of(i for i, P in enumerate(points) if P >> a & 1) for a in range(L.n)}
    labels = [L.labels[prime_of(L, P)] for P in points]
    return FinSpace(len(points), opens, labels)


def prime_of(L: FinLattice, P: int) -> int:
    """The prime p with P = L ∖ ↓p."""
    return L.join_of(L.full & ~P)


def spectrum_points(R: RaneyExt) -> tuple[int, ...]:
    return completely_join_primes(R)


def spectrum(R: RaneyExt) -> FinSpace:
    """Points C* ∩ Filt_CP, opens φ(a) = {P : a ∈ P}; saturated sets checked against C."""
    pts = spectrum_points(R)
    X = _cp_space(R.base, pts)
    phis = {mask_of(i for i, P in enumerate(pts) if not Y & ~P) for Y in R.cstar}
    if phis != set(saturated_sets(X)):
        raise OracleMismatch("saturated sets of the spectrum differ from {φ(c) : c ∈ C}")
    return X


def pt_points(L: FinLattice) -> tuple[int, ...]:
    return tuple(F.carrier for F in cp_filters(L))


def pt_space(L: FinLattice) -> FinSpace:
    return _cp_space(L, pt_points(L))


def ptD_points(L: FinLattice) -> tuple[int, ...]:
    exact = {F.carrier for F in exact_filters(L)}
    pts = tuple(P for P in pt_points(L) if P in exact)
    if {prime_of(L, P) for P in pts} != set(covered_primes(L)):
        raise OracleMismatch("exact CP filters do not match covered primes")
    return pts


def ptD_space(L: FinLattice) -> FinSpace:
    return _cp_space(L, ptD_points(L))


def maxpt_points(L: FinLattice) -> tuple[int, ...]:
    regular = {F.carrier for F in regular_filters(L)}
    pts = tuple(P for P in pt_points(L) if P in regular)
    if {prime_of(L, P) for P in pts} != set(maximal_primes(L)):
        raise OracleMismatch("regular CP filters do not match maximal primes")
    return pts


def maxpt_space(L: FinLattice) -> FinSpace:
    from .spaces import is_T1

    X = _cp_space(L, maxpt_points(L))
    if not is_T1(X):
        raise OracleMismatch("maxpt(L) is not T1")
    return X


def spectrum_bounds_hold(R: RaneyExt) -> bool:
    """pt_D(L) ⊆ points of R ⊆ pt(L)."""
    pts = set(spectrum_points(R))
    return set(ptD_points(R.base)) <= pts <= set(pt_points(R.base))


def spectra_interval(L: FinLattice) -> dict:
    """Spectra of all extensions vs the interval [pt_D(L), pt(L)] of subsets of pt(L)."""
    lo, hi = set(ptD_points(L)), set(pt_points(L))
    free = sorted(hi - lo)
    interval = {frozenset(lo | set(c)) for r in range(len(free) + 1)
                for c in itertools.combinations(free, r)}
    spectra = {frozenset(spectrum_points(R)) for R in enumerate_raney(L)}
    return {"interval": len(interval), "spectra": len(spectra), "holds": interval == spectra}


# --- sublocale coframes against filter families ------------------------------------------


def eandse_maps(L: FinLattice) -> dict:
    """fit: Filt_SE^op → S_o(L) and cl: Filt_E → S_c(L) as order isomorphisms."""
    SE = [F.carrier for F in strongly_exact_filters(L)]
    E = [F.carrier for F in exact_filters(L)]

    def fit(F: int) -> int:
        acc = L.full
        for f in bits(F):
            acc &= open_s(L, f).carrier
        return acc

    def cl(F: int) -> int:
        return join_all(L, [closed_s(L, f) for f in bits(F)]).carrier

    fits = [fit(F) for F in SE]
    cls = [cl(F) for F in E]
    so = {S.carrier for S in fitted(L)}
    sc = {S.carrier for S in joins_of_closed(L)}

    def sub(a: int, b: int) -> bool:
        return not a & ~b

    fit_ok = (
        set(fits) == so and len(set(fits)) == len(SE)
        and all(sub(F, G) == sub(fits[j], fits[i])
                for i, F in enumerate(SE) for j, G in enumerate(SE))
    )
    cl_ok = (
        set(cls) == sc and len(set(cls)) == len(E)
        and all(sub(F, G) == sub(cls[i], cls[j])
                for i, F in enumerate(E) for j, G in enumerate(E))
    )
    return {"fit": fit_ok, "cl": cl_ok, "holds": fit_ok and cl_ok}


def scatteredness(L: FinLattice) -> dict[str, bool]:
    """The conditions equivalent to scatteredness for subfit frames, each evaluated."""
    from .spaces import is_scattered_frame
    from .sublocales import all_sublocales

    E = {F.carrier for F in exact_filters(L)}
    SE = {F.carrier for F in strongly_exact_filters(L)}
    R = {F.carrier for F in regular_filters(L)}
    exts = enumerate_raney(L)
    so = {S.carrier for S in fitted(L)}
    sc = {S.carrier for S in joins_of_closed(L)}
    everything = {S.carrier for S in all_sublocales(L).members}
    return {
        "scattered": is_scattered_frame(L),
        "se=e=r": SE == E == R,
        "se=e": SE == E,
        "unique_extension": len(exts) == 1,
        "so=sc": so == sc,
        "unique_is_S(L)": len(exts) == 1 and so == everything,
    }


def primes_of_extension(R: RaneyExt) -> tuple[int, ...]:
    return tuple(prime_of(R.base, P) for P in spectrum_points(R))

