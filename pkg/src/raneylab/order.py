"""Finite posets and lattices over dense integer indices.

Orders are stored as bit rows: ``up[i]`` has bit ``j`` set iff ``i <= j`` and
``down[i]`` has bit ``j`` set iff ``j <= i``.  Subsets of a lattice are plain
Python ints used as bitsets, so meets and joins over subsets reduce to word
operations.
"""

from __future__ import annotations

import functools
import hashlib
import itertools
import threading
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

import numpy as np

from . import config
from .errors import NotACoframe, NotAFrame, NotALattice, NotAPartialOrder, OracleMismatch


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def as_mask(X: int | Iterable[int]) -> int:
    return X if isinstance(X, int) else mask_of(X)


def _close_rows(rows: list[int]) -> list[int]:
    """Reflexive-transitive closure of a relation given as successor bit rows."""
    n = len(rows)
    rows = [r | (1 << i) for i, r in enumerate(rows)]
    for k in range(n):
        kbit = 1 << k
        rk = rows[k]
        for i in range(n):
            if rows[i] & kbit:
                rows[i] |= rk
    return rows


def _rows_from_matrix(order: Sequence[Sequence[object]]) -> list[int]:
    n = len(order)
    rows = []
    for i, row in enumerate(order):
        if len(row) != n:
            raise NotAPartialOrder(f"row {i} has length {len(row)}, expected {n}")
        rows.append(mask_of(j for j, v in enumerate(row) if v))
    return rows


def _check_partial_order(up: Sequence[int]) -> None:
    n = len(up)
    for i in range(n):
        if not up[i] >> i & 1:
            raise NotAPartialOrder(f"relation is not reflexive at {i}")
        for j in bits(up[i]):
            if j != i and up[j] >> i & 1:
                raise NotAPartialOrder(f"relation is not antisymmetric on ({i}, {j})")
            if up[j] & ~up[i]:
                k = next(bits(up[j] & ~up[i]))
                raise NotAPartialOrder(f"relation is not transitive on ({i}, {j}, {k})")


def _transpose(rows: Sequence[int]) -> tuple[int, ...]:
    n = len(rows)
    out = [0] * n
    for i, r in enumerate(rows):
        for j in bits(r):
            out[j] |= 1 << i
    return tuple(out)


def _covers(up: Sequence[int]) -> list[tuple[int, int]]:
    pairs = []
    for i, row in enumerate(up):
        strict = row & ~(1 << i)
        for j in bits(strict):
            # j covers i iff nothing strictly between them
            between = strict & ~(1 << j)
            if not any(up[k] >> j & 1 for k in bits(between)):
                pairs.append((i, j))
    return pairs


class FinPoset:
    """Finite partial order on ``range(n)``, validated on construction."""

    __slots__ = ("n", "up", "down", "labels")

    def __init__(self, up: Sequence[int], labels: Sequence[str] | None = None):
        up = tuple(up)
        _check_partial_order(up)
        self.n = len(up)
        self.up = up
        self.down = _transpose(up)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(self.n))
        if len(self.labels) != self.n:
            raise ValueError("one label per element is required")

    @classmethod
    def from_matrix(cls, leq: Sequence[Sequence[object]], labels=None) -> FinPoset:
        return cls(_rows_from_matrix(leq), labels)

    @classmethod
    def from_covers(cls, n: int, covers: Iterable[tuple[int, int]], labels=None) -> FinPoset:
        rows = [0] * n
        for i, j in covers:
            if not (0 <= i < n and 0 <= j < n):
                raise NotAPartialOrder(f"pair ({i}, {j}) out of range for {n} elements")
            rows[i] |= 1 << j
        return cls(_close_rows(rows), labels)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def matrix(self) -> list[list[bool]]:
        return [[self.leq(i, j) for j in range(self.n)] for i in range(self.n)]

    def covers(self) -> list[tuple[int, int]]:
        return _covers(self.up)

    def dual(self) -> FinPoset:
        return FinPoset(self.down, self.labels)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FinPoset) and self.up == other.up

    def __hash__(self) -> int:
        return hash(self.up)

    def __repr__(self) -> str:
        return f"FinPoset(n={self.n}, covers={self.covers()})"


class FinLattice:
    """Finite bounded lattice with order, meet and join tables.

    Build instances with :func:`validate_lattice` or :func:`lattice_of_sets`.
    Derived data (flags, Heyting table, filter families, ...) is memoized per
    instance behind a lock; call :meth:`precompute` before handing the object
    to other threads if you want to avoid lock traffic.
    """

    def __init__(self, up, meet, join, bot, top, labels=None):
        self.n = len(up)
        self.up: tuple[int, ...] = tuple(up)
        self.down: tuple[int, ...] = _transpose(self.up)
        self.meet: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in meet)
        self.join: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in join)
        self.bot = bot
        self.top = top
        self.full = (1 << self.n) - 1
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(self.n))
        self._cache: dict = {}
        self._lock = threading.RLock()

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_cache"] = {}
        del state["_lock"]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.RLock()

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def label(self, i: int) -> str:
        return self.labels[i]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def meet_of(self, X: int | Iterable[int]) -> int:
        """Meet of a subset; the empty meet is the top."""
        acc = self.top
        for x in bits(as_mask(X)):
            acc = self.meet[acc][x]
        return acc

    def join_of(self, X: int | Iterable[int]) -> int:
        """Join of a subset; the empty join is the bottom."""
        acc = self.bot
        for x in bits(as_mask(X)):
            acc = self.join[acc][x]
        return acc

    def covers(self) -> list[tuple[int, int]]:
        return _covers(self.up)

    def upper_covers(self, x: int) -> list[int]:
        return [j for i, j in self.covers() if i == x]

    def as_poset(self) -> FinPoset:
        return FinPoset(self.up, self.labels)

    @property
    def is_distributive(self) -> bool:
        return is_distributive(self)

    @property
    def is_boolean(self) -> bool:
        return is_boolean(self)

    @property
    def is_subfit(self) -> bool:
        return is_subfit(self)

    @property
    def fingerprint(self) -> str:
        return lattice_fingerprint(self)

    def precompute(self) -> FinLattice:
        """Evaluate the cached flags eagerly; idempotent."""
        self.is_distributive
        self.is_boolean
        if self.is_distributive:
            self.is_subfit
            heyting_table(self)
        return self

    def __repr__(self) -> str:
        return f"FinLattice(n={self.n}, labels={list(self.labels)})"


def lattice_cached(fn):
    """Memoize ``fn(L, *args)`` on the lattice instance ``L``."""
    name = fn.__module__ + "." + fn.__qualname__

    @functools.wraps(fn)
    def wrapper(L, *args):
        key = (name, args)
        cache = L._cache
        if key in cache:
            return cache[key]
        with L._lock:
            if key not in cache:
                cache[key] = fn(L, *args)
            return cache[key]

    wrapper.uncached = fn
    return wrapper


def validate_lattice(order, labels: Sequence[str] | None = None) -> FinLattice:
    """Build a :class:`FinLattice` from an n x n order relation or a :class:`FinPoset`.

    Raises :class:`NotAPartialOrder` or :class:`NotALattice` (naming a pair
    without a meet or join).
    """
    if isinstance(order, FinPoset):
        up = order.up
        labels = labels if labels is not None else order.labels
    else:
        up = tuple(_rows_from_matrix(order))
        _check_partial_order(up)
    n = len(up)
    if n < 1:
        raise NotALattice((0, 0), "bounds (empty order)")
    down = _transpose(up)
    full = (1 << n) - 1
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            lower = down[i] & down[j]
            g = next((m for m in bits(lower) if not lower & ~down[m]), None)
            if g is None:
                raise NotALattice((i, j), "meet")
            upper = up[i] & up[j]
            l_ = next((m for m in bits(upper) if not upper & ~up[m]), None)
            if l_ is None:
                raise NotALattice((i, j), "join")
            meet[i][j] = meet[j][i] = g
            join[i][j] = join[j][i] = l_
    bot = next(i for i in range(n) if up[i] == full) if any(u == full for u in up) else None
    top = next(i for i in range(n) if down[i] == full) if any(d == full for d in down) else None
    if bot is None or top is None:
        raise NotALattice((0, 0), "bounds")
    return FinLattice(up, meet, join, bot, top, labels)


def lattice_of_sets(sets: Sequence[int], labels: Sequence[str] | None = None) -> FinLattice:
    """Lattice of the given (distinct) bitsets ordered by inclusion."""
    n = len(sets)
    if len(set(sets)) != n:
        raise ValueError("sets must be distinct")
    up = [mask_of(j for j in range(n) if sets[i] & ~sets[j] == 0) for i in range(n)]
    return validate_lattice(FinPoset(up, labels))


def lattice_fingerprint(L: FinLattice) -> str:
    text = f"lat {L.n};" + ";".join(f"{i}<{j}" for i, j in L.covers())
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def is_order_isomorphism(L, M, mapping: Sequence[int]) -> bool:
    """True iff ``mapping`` is a bijection L -> M that preserves and reflects order."""
    if L.n != M.n or sorted(mapping) != list(range(M.n)):
        return False
    return all(
        L.leq(i, j) == M.leq(mapping[i], mapping[j]) for i in range(L.n) for j in range(L.n)
    )


# --- distributivity and Boolean structure ---------------------------------


def _np_tables(L: FinLattice) -> tuple[np.ndarray, np.ndarray]:
    return np.asarray(L.meet, dtype=np.int64), np.asarray(L.join, dtype=np.int64)


@lattice_cached
def distributivity_witness(L: FinLattice) -> tuple[int, int, int] | None:
    """First triple (a, b, c) with a ∧ (b ∨ c) != (a ∧ b) ∨ (a ∧ c), or None."""
    M, J = _np_tables(L)
    lhs = M[:, J]  # lhs[a, b, c] = a ∧ (b ∨ c)
    ab = M[:, :, None]
    ac = M[:, None, :]
    rhs = J[np.broadcast_to(ab, lhs.shape), np.broadcast_to(ac, lhs.shape)]
    bad = np.argwhere(lhs != rhs)
    if len(bad) == 0:
        return None
    a, b, c = (int(v) for v in bad[0])
    return a, b, c


def is_distributive(L: FinLattice) -> bool:
    """Binary distributive law over all triples; finitely this gives both infinite laws."""
    return distributivity_witness(L) is None


def _require_frame(L: FinLattice, what: str = "operation") -> None:
    if not is_distributive(L):
        a, b, c = distributivity_witness(L)
        raise NotAFrame(f"{what} needs a distributive lattice; fails at ({a}, {b}, {c})")


def complement(L: FinLattice, a: int) -> int | None:
    for b in range(L.n):
        if L.meet[a][b] == L.bot and L.join[a][b] == L.top:
            return b
    return None


@lattice_cached
def is_boolean(L: FinLattice) -> bool:
    return is_distributive(L) and all(complement(L, a) is not None for a in range(L.n))


# --- Heyting and co-Heyting operations -------------------------------------


@lattice_cached
def heyting_table(L: FinLattice) -> tuple[tuple[int, ...], ...]:
    _require_frame(L, "heyting")
    n = L.n
    table = []
    for a in range(n):
        # preimage[y] = {x : x ∧ a = y}
        preimage = [0] * n
        for x in range(n):
            preimage[L.meet[x][a]] |= 1 << x
        row = []
        for b in range(n):
            cand = 0
            for y in bits(L.down[b]):
                cand |= preimage[y]
            top = next((m for m in bits(cand) if not cand & ~L.down[m]), None)
            if top is None:  # pragma: no cover - impossible in a distributive lattice
                raise OracleMismatch(f"{{x : x ∧ {a} <= {b}}} has no maximum")
            row.append(top)
        table.append(tuple(row))
    return tuple(table)


def heyting(L: FinLattice, a: int, b: int) -> int:
    """Heyting implication a → b = max{x : x ∧ a <= b}."""
    return heyting_table(L)[a][b]


def codifference(L: FinLattice, s: int, t: int) -> int:
    """Co-Heyting difference s ∖ t = min{u : s <= t ∨ u}."""
    if not is_distributive(L):
        raise NotACoframe("codifference needs a distributive lattice")
    cand = mask_of(u for u in range(L.n) if L.leq(s, L.join[t][u]))
    low = next((m for m in bits(cand) if not cand & ~L.up[m]), None)
    if low is None:  # pragma: no cover
        raise OracleMismatch(f"{{u : {s} <= {t} ∨ u}} has no minimum")
    return low


def pseudocomplement(L: FinLattice, a: int) -> int:
    return heyting(L, a, L.bot)


# --- primes and element classes --------------------------------------------


def _primes_by_definition(L: FinLattice) -> frozenset[int]:
    out = []
    for p in range(L.n):
        if p == L.top:
            continue
        below = L.down[p]
        outside = L.full & ~below
        if all(not below >> L.meet[x][y] & 1 for x in bits(outside) for y in bits(outside)):
            out.append(p)
    return frozenset(out)


def meet_irreducibles(L: FinLattice) -> frozenset[int]:
    """Elements other than the top with exactly one upper cover."""
    count = [0] * L.n
    for i, _ in L.covers():
        count[i] += 1
    return frozenset(i for i in range(L.n) if i != L.top and count[i] == 1)


@lattice_cached
def primes(L: FinLattice) -> frozenset[int]:
    """Prime elements, cross-checked against the meet-irreducibles."""
    _require_frame(L, "primes")
    direct = _primes_by_definition(L)
    if direct != meet_irreducibles(L):
        raise OracleMismatch(f"primes {sorted(direct)} != meet-irreducibles {sorted(meet_irreducibles(L))}")
    return direct


def strict_up_meet(L: FinLattice, a: int) -> int:
    """⋀{x : a < x}."""
    return L.meet_of(L.up[a] & ~(1 << a))


@lattice_cached
def covered_primes(L: FinLattice) -> frozenset[int]:
    ps = primes(L)
    covered = frozenset(p for p in ps if strict_up_meet(L, p) != p)
    if covered != ps:
        raise OracleMismatch(f"uncovered primes {sorted(ps - covered)} in a finite frame")
    return covered


@lattice_cached
def is_subfit(L: FinLattice) -> bool:
    """For every x ≰ y there is u with x ∨ u = 1 and y ∨ u != 1."""
    _require_frame(L, "is_subfit")
    tops = [mask_of(u for u in range(L.n) if L.join[x][u] == L.top) for x in range(L.n)]
    return all(
        tops[x] & ~tops[y] for x in range(L.n) for y in range(L.n) if not L.leq(x, y)
    )


def subfit_witness(L: FinLattice) -> tuple[int, int] | None:
    """A pair x ≰ y admitting no separating u, or None when subfit."""
    tops = [mask_of(u for u in range(L.n) if L.join[x][u] == L.top) for x in range(L.n)]
    for x in range(L.n):
        for y in range(L.n):
            if not L.leq(x, y) and not tops[x] & ~tops[y]:
                return x, y
    return None


def is_exact_meet(L: FinLattice, X: int | Iterable[int]) -> bool:
    """(⋀X) ∨ a = ⋀{x ∨ a : x ∈ X} for every a."""
    X = as_mask(X)
    if not X:
        raise ValueError("exactness is defined for nonempty families")
    m = L.meet_of(X)
    return all(
        L.join[m][a] == L.meet_of(mask_of(L.join[x][a] for x in bits(X))) for a in range(L.n)
    )


def is_strongly_exact_meet(L: FinLattice, X: int | Iterable[int]) -> bool:
    """x → y = y for all x ∈ X implies (⋀X) → y = y, for every y."""
    X = as_mask(X)
    if not X:
        raise ValueError("exactness is defined for nonempty families")
    imp = heyting_table(L)
    m = L.meet_of(X)
    return all(
        imp[m][y] == y for y in range(L.n) if all(imp[x][y] == y for x in bits(X))
    )


@lattice_cached
def maximal_primes(L: FinLattice) -> frozenset[int]:
    """Primes with no prime strictly above, compared with the regular-filter route."""
    from .filters import regular_filters

    ps = primes(L)
    direct = frozenset(p for p in ps if not any(q != p and L.leq(p, q) for q in ps))
    regular = {F.carrier for F in regular_filters(L)}
    via_filters = frozenset(p for p in ps if L.full & ~L.down[p] in regular)
    if direct != via_filters:
        raise OracleMismatch(
            f"maximal primes {sorted(direct)} != primes with regular complement {sorted(via_filters)}"
        )
    return direct


# --- meet families ----------------------------------------------------------


def meet_closure(L: FinLattice, X: int) -> int:
    """Closure of X under binary meets (the empty meet is not added)."""
    closed = X
    frontier = X
    while frontier:
        new = 0
        for a in bits(frontier):
            for b in bits(closed):
                new |= 1 << L.meet[a][b]
        frontier = new & ~closed
        closed |= new
    return closed


def reduce_over(table: np.ndarray, F: np.ndarray, vals: np.ndarray, identity: int) -> np.ndarray:
    """Fold ``table`` over ``vals[j]`` for every column j selected in each row of F."""
    cur = np.full(F.shape[0], identity, dtype=np.int64)
    for j in range(F.shape[1]):
        sel = F[:, j]
        if sel.any():
            cur[sel] = table[cur[sel], vals[j]]
    return cur


def indicator(masks: Sequence[int], n: int) -> np.ndarray:
    out = np.zeros((len(masks), n), dtype=bool)
    for r, m in enumerate(masks):
        for j in bits(m):
            out[r, j] = True
    return out


@dataclass(frozen=True)
class FamilyTable:
    """The quantification domain for 'all meets' together with per-family data.

    Every nonempty subset when the lattice has at most ``ALL_SUBSETS_LIMIT``
    elements; otherwise all subsets of size <= 3 plus the meet-closed families
    they generate.
    """

    masks: tuple[int, ...]
    F: np.ndarray
    meets: np.ndarray
    joins: np.ndarray
    exact: np.ndarray
    strongly_exact: np.ndarray
    complete: bool

    def __len__(self) -> int:
        return len(self.masks)


def family_masks(L: FinLattice) -> tuple[tuple[int, ...], bool]:
    n = L.n
    if n <= config.ALL_SUBSETS_LIMIT:
        return tuple(range(1, 1 << n)), True
    out = set()
    for size in (1, 2, 3):
        for combo in itertools.combinations(range(n), size):
            m = mask_of(combo)
            out.add(m)
            out.add(meet_closure(L, m))
    return tuple(sorted(out)), False


def exact_rows(L: FinLattice, F: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Meets of the families given as rows of F, and whether each meet is exact."""
    M, J = _np_tables(L)
    meets = reduce_over(M, F, np.arange(L.n), L.top)
    exact = np.ones(F.shape[0], dtype=bool)
    for a in range(L.n):
        exact &= J[meets, a] == reduce_over(M, F, J[:, a], L.top)
    return meets, exact


@lattice_cached
def family_table(L: FinLattice) -> FamilyTable:
    _require_frame(L, "family_table")
    masks, complete = family_masks(L)
    n = L.n
    M, J = _np_tables(L)
    imp = np.asarray(heyting_table(L), dtype=np.int64)
    F = indicator(masks, n)
    ident = np.arange(n)
    meets, exact = exact_rows(L, F)
    joins = reduce_over(J, F, ident, L.bot)
    strong = np.ones(len(masks), dtype=bool)
    for a in range(n):
        fixed = imp[:, a] == a
        premise = ~(F & ~fixed[None, :]).any(axis=1)
        strong &= ~premise | (imp[meets, a] == a)
    return FamilyTable(masks, F, meets, joins, exact, strong, complete)


def exactness_violations(L: FinLattice) -> dict[str, list[int]]:
    """Families in the quantification domain failing exactness or strong exactness."""
    t = family_table(L)
    return {
        "exact": [t.masks[i] for i in np.flatnonzero(~t.exact)],
        "strongly_exact": [t.masks[i] for i in np.flatnonzero(~t.strongly_exact)],
    }
