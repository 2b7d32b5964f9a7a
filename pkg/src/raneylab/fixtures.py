"""Small named lattices and spaces used throughout the tests and docs."""

from __future__ import annotations

from .order import FinLattice, FinPoset, validate_lattice


def lattice_from_covers(n: int, covers, labels=None) -> FinLattice:
    return validate_lattice(FinPoset.from_covers(n, covers, labels))


def chain(k: int) -> FinLattice:
    return lattice_from_covers(k, [(i, i + 1) for i in range(k - 1)])


def C2() -> FinLattice:
    return lattice_from_covers(2, [(0, 1)], ["0", "1"])


def C3() -> FinLattice:
    return lattice_from_covers(3, [(0, 1), (1, 2)], ["0", "a", "1"])


def B2() -> FinLattice:
    return lattice_from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)], ["0", "a", "b", "1"])


def L5() -> FinLattice:
    """Upsets of V = {⊥ < x, ⊥ < y}: 0 < a, b < m < 1."""
    return lattice_from_covers(
        5, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)], ["0", "a", "b", "m", "1"]
    )


def M3() -> FinLattice:
    return lattice_from_covers(
        5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], ["0", "a", "b", "c", "1"]
    )


def N5() -> FinLattice:
    return lattice_from_covers(
        5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], ["0", "a", "b", "c", "1"]
    )


def poset_V() -> FinPoset:
    return FinPoset.from_covers(3, [(0, 1), (0, 2)], ["⊥", "x", "y"])


def chain_poset(k: int) -> FinPoset:
    return FinPoset.from_covers(k, [(i, i + 1) for i in range(k - 1)])


def antichain_poset(k: int) -> FinPoset:
    return FinPoset.from_covers(k, [])
