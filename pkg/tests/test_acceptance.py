"""Acceptance criteria 1-10, one test each.

Every test prints a single ``[criterion N] PASS|FAIL ...`` line with the
measured quantities and the pinned limits, then asserts.
"""

from __future__ import annotations

import itertools
import subprocess
import sys
import time

import numpy as np

from raneylab import birkhoff
from raneylab.birkhoff import count_posets, enumerate_posets, oracle_classes, oracle_key, prime_dual, upset_lattice
from raneylab.config import Caps
from raneylab.harness import (
    chk_charsubfit,
    chk_covered_primes,
    chk_d_sublocales,
    chk_exact_meets,
    chk_exact_sublocales,
    chk_filter_collapse,
    chk_filter_tower,
    chk_manyfacts,
    chk_raney_unique,
    chk_regular_filters,
    frame_instances,
)
from raneylab.order import _np_tables, indicator, is_order_isomorphism, primes, reduce_over
from raneylab.raney import eandse_maps, pt_points, pt_space, ptD_space, spectrum, spectrum_points, unique_extension
from raneylab.spaces import alexandrov_space, doubled_sierpinski, indiscrete, psi, phi
from raneylab.sublocales import (
    all_sublocales,
    closed_s,
    generate_sublocale,
    join_s,
    minimal_sublocale_oracle,
    open_s,
)

# pinned limits
CRIT1_SECONDS = 10.0
CRIT2_SECONDS = 30.0
CRIT10_SECONDS = 60.0
POSET_COUNTS = {1: 1, 2: 2, 3: 5, 4: 16, 5: 63, 6: 318}
FRAMES_UP_TO_4 = 25  # 1 + 1 + 2 + 5 + 16
FRAMES_UP_TO_5 = 88  # FRAMES_UP_TO_4 + 63


def verdict(n: int, ok: bool, detail: str) -> None:
    print(f"[criterion {n}] {'PASS' if ok else 'FAIL'} {detail}")


def frames(max_poset: int):
    return frame_instances(Caps(max_poset=max_poset))


def run_check(fn, insts) -> list:
    failures = []
    for inst in insts:
        w = fn(inst)
        if w is not None:
            failures.append((inst.key, w))
    return failures


def test_criterion_1_birkhoff_round_trip():
    start = time.perf_counter()
    birkhoff._classes.cache_clear()
    five = list(enumerate_posets(5))
    round_trip_bad = 0
    for P in five:
        L = upset_lattice(P)
        d = prime_dual(L)
        if not (birkhoff.are_isomorphic(d.poset, P) and is_order_isomorphism(L, d.lattice, d.iso)):
            round_trip_bad += 1
    counts = {n: count_posets(n) for n in POSET_COUNTS}
    oracle_counts = {n: len(oracle_classes(n)) for n in POSET_COUNTS}
    keys_agree = all(
        {oracle_key(P) for P in enumerate_posets(n)} == oracle_classes(n) for n in POSET_COUNTS
    )
    elapsed = time.perf_counter() - start
    ok = (len(five) == 63 and round_trip_bad == 0 and counts == POSET_COUNTS
          and oracle_counts == POSET_COUNTS and keys_agree and elapsed <= CRIT1_SECONDS)
    verdict(1, ok, f"posets5={len(five)} round_trip_failures={round_trip_bad} counts={list(counts.values())} "
                   f"oracle={list(oracle_counts.values())} elapsed={elapsed:.2f}s limit={CRIT1_SECONDS}s")
    assert ok


def test_criterion_2_sublocale_structure():
    start = time.perf_counter()
    insts = frames(4)
    count_bad, order_bad = [], []
    for inst in insts:
        L = inst.L
        cf = all_sublocales(L)
        if len(cf) != 2 ** len(primes(L)):
            count_bad.append(inst.key)
        for (S, q), (T, r) in itertools.product(zip(cf.members, cf.prime_sets), repeat=2):
            if (S <= T) != (not q & ~r):
                order_bad.append(inst.key)
                break
    small = [inst for inst in frames(5) if inst.L.n <= 8]
    subsets = 0
    gen_bad = []
    for inst in small:
        L = inst.L
        for X in range(1 << L.n):
            subsets += 1
            if generate_sublocale(L, X).carrier != minimal_sublocale_oracle(L, X):
                gen_bad.append((inst.key, X))
    elapsed = time.perf_counter() - start
    ok = (len(insts) == FRAMES_UP_TO_4 and not count_bad and not order_bad and not gen_bad
          and elapsed <= CRIT2_SECONDS)
    verdict(2, ok, f"frames={len(insts)} count_failures={len(count_bad)} order_failures={len(order_bad)} "
                   f"small_frames={len(small)} subsets={subsets} generate_failures={len(gen_bad)} "
                   f"elapsed={elapsed:.2f}s limit={CRIT2_SECONDS}s")
    assert ok


def _manyfacts_all_subsets(inst) -> list:
    """Items 3 and 4 over every nonempty family, plus binary identities via join_s."""
    L = inst.L
    cf = all_sublocales(L)
    M, J = _np_tables(cf.lattice)
    o = np.array([cf.index(open_s(L, a)) for a in range(L.n)])
    c = np.array([cf.index(closed_s(L, a)) for a in range(L.n)])
    masks = list(range(1, 1 << L.n))
    F = indicator(masks, L.n)
    joins = reduce_over(np.asarray(L.join), F, np.arange(L.n), L.bot)
    bad = []
    if (reduce_over(J, F, o, cf.lattice.bot) != o[joins]).any():
        bad.append("item 3 (families)")
    if (reduce_over(M, F, c, cf.lattice.top) != c[joins]).any():
        bad.append("item 4 (families)")
    for a, b in itertools.product(range(L.n), repeat=2):
        if join_s(closed_s(L, a), closed_s(L, b)).carrier != closed_s(L, L.meet[a][b]).carrier:
            bad.append("item 4 (binary)")
        if open_s(L, a).carrier & open_s(L, b).carrier != open_s(L, L.meet[a][b]).carrier:
            bad.append("item 3 (binary)")
    return bad


def test_criterion_3_manyfacts():
    insts = frames(4)
    failures = run_check(chk_manyfacts, insts)
    exhaustive = [(inst.key, b) for inst in insts for b in _manyfacts_all_subsets(inst)]
    families = sum((1 << inst.L.n) - 1 for inst in insts)
    ok = len(insts) == FRAMES_UP_TO_4 and not failures and not exhaustive
    verdict(3, ok, f"frames={len(insts)} families={families} items=1-6 "
                   f"failures={len(failures)} exhaustive_failures={len(exhaustive)} tolerance=0")
    assert ok


def test_criterion_4_subfit_quadruple():
    insts = frames(5)
    failures = run_check(chk_charsubfit, insts)
    agree = len(insts) - len(failures)
    ok = len(insts) == FRAMES_UP_TO_5 and not failures
    verdict(4, ok, f"frames={len(insts)} agreeing={agree} ({100 * agree / len(insts):.1f}%) required=100%")
    assert ok


def test_criterion_5_eandse():
    insts = frames(4)
    bad = [inst.key for inst in insts if not eandse_maps(inst.L)["holds"]]
    ok = len(insts) == FRAMES_UP_TO_4 and not bad
    verdict(5, ok, f"frames={len(insts)} fit_and_cl_isomorphisms_failed={len(bad)} tolerance=0")
    assert ok


def test_criterion_6_finite_collapse():
    insts = frames(5)
    parts = {
        "filters": chk_filter_collapse,
        "unique_extension": chk_raney_unique,
        "pt_eq_ptD": chk_covered_primes,
        "exact_sublocales": chk_exact_sublocales,
        "d_sublocales": chk_d_sublocales,
        "exact_meets": chk_exact_meets,
    }
    failures = {name: run_check(fn, insts) for name, fn in parts.items()}
    total = sum(len(v) for v in failures.values())
    ok = len(insts) == FRAMES_UP_TO_5 and total == 0
    detail = " ".join(f"{k}={len(v)}" for k, v in failures.items())
    verdict(6, ok, f"frames={len(insts)} {detail} exceptions_allowed=0")
    assert ok


def test_criterion_7_adjunction_fixpoints():
    spaces = [alexandrov_space(P) for n in range(1, 6) for P in enumerate_posets(n)]
    psi_bad = [X for X in spaces if not psi(X).homeomorphism]
    insts = frames(5)
    phi_bad = [inst.key for inst in insts if not phi(unique_extension(inst.L)).isomorphism]
    non_t0 = [indiscrete(2), indiscrete(3), doubled_sierpinski()]
    non_t0_injective = [X for X in non_t0 if psi(X).injective]
    ok = len(spaces) == 87 and not psi_bad and not phi_bad and not non_t0_injective
    verdict(7, ok, f"t0_spaces={len(spaces)} psi_failures={len(psi_bad)} frames={len(insts)} "
                   f"phi_failures={len(phi_bad)} non_t0_fixtures={len(non_t0)} "
                   f"unexpectedly_injective={len(non_t0_injective)}")
    assert ok


def test_criterion_8_spectra_interval():
    insts = frames(5)
    bad = []
    for inst in insts:
        L = inst.L
        R = unique_extension(L)
        S = spectrum(R)
        if spectrum_points(R) != pt_points(L) or S != pt_space(L) or S != ptD_space(L):
            bad.append(inst.key)
    ok = len(insts) == FRAMES_UP_TO_5 and not bad
    verdict(8, ok, f"frames={len(insts)} spectrum_vs_pt_ptD_failures={len(bad)} (pointwise and topological)")
    assert ok


def test_criterion_9_filter_tower():
    insts = frames(5)
    tower = run_check(chk_filter_tower, insts)
    boolean = run_check(chk_regular_filters, insts)
    ok = len(insts) == FRAMES_UP_TO_5 and not tower and not boolean
    verdict(9, ok, f"frames={len(insts)} inclusion_failures={len(tower)} "
                   f"regular_not_boolean_or_not_double_negation={len(boolean)}")
    assert ok


def test_criterion_10_determinism():
    cmd = [sys.executable, "-m", "raneylab", "check", "--max-poset", "5"]
    outputs, times, codes = [], [], []
    for _ in range(2):
        start = time.perf_counter()
        proc = subprocess.run(cmd, capture_output=True, check=False)
        times.append(time.perf_counter() - start)
        outputs.append(proc.stdout)
        codes.append(proc.returncode)
    identical = outputs[0] == outputs[1]
    ok = identical and codes == [0, 0] and max(times) <= CRIT10_SECONDS and len(outputs[0]) > 0
    verdict(10, ok, f"runs=2 exit={codes} byte_identical={identical} bytes={len(outputs[0])} "
                    f"times=[{times[0]:.1f}s, {times[1]:.1f}s] limit={CRIT10_SECONDS}s")
    assert ok
