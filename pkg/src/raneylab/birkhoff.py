"""Finite frames from posets and back, plus isomorph-free poset enumeration.

Every finite distributive lattice is the lattice of upsets of its poset of
primes (ordered dually), so frames are generated from posets on demand.
"""

from __future__ import annotations

import functools
import hashlib
import itertools
from dataclasses import dataclass

import numpy as np

from . import config
from .errors import OracleMismatch, SizeCap
from .order import (
    FinLattice,
    FinPoset,
    bits,
    is_order_isomorphism,
    lattice_of_sets,
    mask_of,
    popcount,
    primes,
)


def upsets(P: FinPoset) -> list[int]:
    """All upsets of P as bitmasks, sorted by (size, mask)."""
    out = [
        U for U in range(1 << P.n)
        if all(not P.up[i] & ~U for i in bits(U))
    ]
    out.sort(key=lambda U: (popcount(U), U))
    return out


def downsets(P: FinPoset) -> list[int]:
    return [D for D in range(1 << P.n) if all(not P.down[i] & ~D for i in bits(D))]


def _set_label(P: FinPoset, U: int) -> str:
    return "{" + ",".join(P.labels[i] for i in bits(U)) + "}"


def upset_lattice(P: FinPoset, cap: int = config.HARD_MAX_ELEMENTS) -> FinLattice:
    """Lattice of upsets of P under inclusion. Always distributive."""
    if 2 ** P.n > cap:
        raise SizeCap(f"upset lattice of a {P.n}-element poset may have 2^{P.n} > {cap} elements")
    us = upsets(P)
    return lattice_of_sets(us, [_set_label(P, U) for U in us])


@dataclass(frozen=True)
class PrimeDual:
    """Poset of primes of a frame and the certificate L ≅ upsets(poset)."""

    poset: FinPoset
    primes: tuple[int, ...]
    lattice: FinLattice
    iso: tuple[int, ...]


def prime_dual(L: FinLattice) -> PrimeDual:
    ps = tuple(sorted(primes(L)))
    k = len(ps)
    # p <= q in the dual order iff q <= p in L
    up = [mask_of(j for j in range(k) if L.leq(ps[j], ps[i])) for i in range(k)]
    P = FinPoset(up, [L.labels[p] for p in ps])
    UL = upset_lattice(P)
    position = {U: i for i, U in enumerate(upsets(P))}
    iso = tuple(
        position[mask_of(i for i, p in enumerate(ps) if not L.leq(x, p))]
        for x in range(L.n)
    )
    if not is_order_isomorphism(L, UL, iso):
        raise OracleMismatch("x -> {p : x ≰ p} is not an isomorphism onto the upset lattice")
    return PrimeDual(P, ps, UL, iso)


def poset_of_primes(L: FinLattice) -> FinPoset:
    """Primes of L under the reversed order; see :func:`prime_dual` for the certificate."""
    return prime_dual(L).poset


# --- canonical forms ---------------------------------------------------------


def _refined_colors(P: FinPoset) -> list[int]:
    n = P.n
    colors = [(popcount(P.down[i]), popcount(P.up[i])) for i in range(n)]
    ranks = _rank(colors)
    while True:
        sig = [
            (
                ranks[i],
                tuple(sorted(ranks[j] for j in bits(P.down[i]) if j != i)),
                tuple(sorted(ranks[j] for j in bits(P.up[i]) if j != i)),
            )
            for i in range(n)
        ]
        new = _rank(sig)
        if len(set(new)) == len(set(ranks)):
            return new
        ranks = new


def _rank(values: list) -> list[int]:
    order = {v: r for r, v in enumerate(sorted(set(values)))}
    return [order[v] for v in values]


def _matrix_key(P: FinPoset, order: tuple[int, ...]) -> int:
    key = 0
    for i in order:
        row = P.up[i]
        for j in order:
            key = key << 1 | (row >> j & 1)
    return key


def canonical_key(P: FinPoset) -> tuple[int, int]:
    """(n, k) where k is the lexicographically least order matrix, read as a bit string.

    The minimum is taken over labelings that list elements by refined
    degree/level color; those colors are isomorphism invariants, so the
    result is too.
    """
    if P.n == 0:
        return 0, 0
    colors = _refined_colors(P)
    cells = [
        [i for i in range(P.n) if colors[i] == c] for c in sorted(set(colors))
    ]
    best = None
    for parts in itertools.product(*(itertools.permutations(c) for c in cells)):
        order = tuple(itertools.chain.from_iterable(parts))
        key = _matrix_key(P, order)
        if best is None or key < best:
            best = key
    return P.n, best


def _poset_from_key(n: int, key: int) -> FinPoset:
    up = []
    for i in range(n):
        row = 0
        for j in range(n):
            shift = n * n - 1 - (i * n + j)
            if key >> shift & 1:
                row |= 1 << j
        up.append(row)
    return FinPoset(up)


def canonical_form(P: FinPoset) -> FinPoset:
    """Isomorphism-invariant representative of P."""
    return _poset_from_key(*canonical_key(P))


def canonical_hash(P: FinPoset) -> str:
    n, key = canonical_key(P)
    return hashlib.sha256(f"poset:{n}:{key}".encode()).hexdigest()[:16]


def are_isomorphic(P: FinPoset, Q: FinPoset) -> bool:
    return canonical_key(P) == canonical_key(Q)


# --- enumeration -------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _classes(n: int) -> tuple[tuple[int, int], ...]:
    if n == 0:
        return ((0, 0),)
    seen = set()
    for _, key in _classes(n - 1):
        P = _poset_from_key(n - 1, key)
        for D in downsets(P):
            # new element n-1 sits on top of the downset D
            up = [row | (1 << (n - 1)) if D >> i & 1 else row for i, row in enumerate(P.up)]
            up.append(1 << (n - 1))
            seen.add(canonical_key(FinPoset(up)))
    return tuple(sorted(seen))


def enumerate_posets(n: int, cap: int = config.DEFAULT_MAX_POSET):
    """One canonical representative per isomorphism class of n-element posets.

    Representatives come out in increasing canonical-key order.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > min(cap, config.HARD_MAX_POSET):
        raise SizeCap(f"poset enumeration capped at {min(cap, config.HARD_MAX_POSET)} elements")
    for size, key in _classes(n):
        yield _poset_from_key(size, key)


def count_posets(n: int, cap: int = config.DEFAULT_MAX_POSET) -> int:
    return sum(1 for _ in enumerate_posets(n, cap))


# --- brute-force oracle -------------------------------------------------------


def _natural_posets(n: int):
    """Every strict order contained in i < j (each poset has such a labeling)."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for pattern in range(1 << len(pairs)):
        rows = [1 << i for i in range(n)]
        for b, (i, j) in enumerate(pairs):
            if pattern >> b & 1:
                rows[i] |= 1 << j
        if all(not rows[j] & ~rows[i] for i in range(n) for j in bits(rows[i])):
            yield rows


def oracle_key(P: FinPoset, perms: np.ndarray | None = None) -> int:
    """Least order matrix over all n! relabelings, with no invariant pruning."""
    n = P.n
    if n == 0:
        return 0
    if perms is None:
        perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    M = np.array(P.matrix(), dtype=np.int64)
    permuted = M[perms[:, :, None], perms[:, None, :]].reshape(len(perms), n * n)
    weights = 1 << np.arange(n * n - 1, -1, -1, dtype=np.int64)
    return int((permuted @ weights).min())


def oracle_classes(n: int) -> set[int]:
    """Isomorphism classes of n-element posets by exhaustive relabeling."""
    if n > 6:
        raise SizeCap("the brute-force oracle stops at 6 elements")
    if n == 0:
        return {0}
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    return {oracle_key(FinPoset(rows), perms) for rows in _natural_posets(n)}
