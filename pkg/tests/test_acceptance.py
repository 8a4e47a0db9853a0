"""Acceptance suite: one test per criterion, printing a PASS/FAIL line each.

Run with:  pytest tests/test_acceptance.py -v -s

The full suite takes roughly 10 to 20 minutes on two cores; the dominant
cost is the exhaustive (k=2, n=7) class scan, shared by criteria 3 to 5.
Set SYNC_CENSUS_ACCEPT_EXTENDED=1 to also attempt the multi-hour (k=2,
n=8) gap table (skipped by default, see its docstring).

Criterion 9 is expected to FAIL, and is left failing deliberately: the
slot-uniform random model provably concentrates on a different value than
the isomorphism-class fraction it is compared against. The test docstring
carries the measured numbers.
"""

import itertools
import os
import random
import time
from fractions import Fraction

import pytest

import sync_census as sc
from sync_census.experiments import round3, table1_csv, table2_csv
from sync_census.pipeline import ScanOptions, run_scan

import oracles

WORKERS = min(2, os.cpu_count() or 1)
EXTENDED = os.environ.get("SYNC_CENSUS_ACCEPT_EXTENDED") == "1"

_scan_cache = {}


def class_scan(n, k):
    if (n, k) not in _scan_cache:
        _scan_cache[(n, k)] = sc.scan_class(n, k, workers=WORKERS)
    return _scan_cache[(n, k)]


def report(num, desc, ok):
    print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {num}: {desc}")
    assert ok, f"criterion {num}: {desc}"


# Published reference rows: (k, n) -> (class size, totally synchronizing).
TABLE2 = {
    (2, 2): (2, 1), (2, 3): (12, 6), (2, 4): (100, 66), (2, 5): (1220, 890),
    (2, 6): (19_064, 14_973), (2, 7): (361_157, 296_303),
    (3, 2): (5, 3), (3, 3): (85, 63), (3, 4): (3_148, 2_672),
    (4, 2): (9, 6), (4, 3): (357, 302),
    (5, 2): (14, 10), (5, 3): (1_102, 990),
}

# (k, n) -> (min, min_ratio or None, avg, std_dev), printed at 3 decimals.
TABLE1 = {
    (2, 2): (2, None, "3.000", "1.000"),
    (2, 3): (4, None, "6.833", "1.280"),
    (2, 4): (8, None, "14.640", "2.243"),
    (2, 5): (16, None, "30.987", "2.146"),
    (2, 6): (30, "0.469", "63.139", "2.381"),
    (3, 2): (24, None, "31.200", "5.879"),
    (3, 3): (144, None, "208.800", "14.163"),
    (4, 2): (432, None, "533.333", "61.738"),
    (5, 2): (11_520, None, "13782.857", "1048.941"),
}


def test_criterion_01_g30_census():
    t0 = time.perf_counter()
    res = sc.census(sc.g30())
    elapsed = time.perf_counter() - t0
    ok = (res.sync_colorings == 30 and res.total_colorings == 64
          and res.ratio == Fraction(30, 64) and elapsed < 1.0)
    report(1, f"g30 census 30/64 in {elapsed:.3f}s", ok)


def test_criterion_02_construction_ratios():
    t0 = time.perf_counter()
    ok = True
    for n in range(3, 11):
        ok &= sc.census(sc.cerny_digraph(n)).ratio == 1
    for n in range(4, 9):
        for k in (2, 3, 4):
            ok &= sc.census(sc.gnk(n, k)).ratio == Fraction(k - 1, k)
    for d in (1, 2, 3):
        for n in range(3 * d, 3 * d + 5):
            for k in (2, 3):
                ok &= sc.census(sc.hdnk(d, n, k)).ratio == 1 - Fraction(1, k ** d)
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 60.0
    report(2, f"construction ratios exact (cerny, gnk, hdnk grids) in {elapsed:.1f}s", ok)


def test_criterion_03_table2_class_counts():
    ok = True
    for (k, n), (classes, totally) in sorted(TABLE2.items()):
        scan = class_scan(n, k)
        got = (scan.stats.count, scan.stats.totally_sync)
        if got != (classes, totally):
            print(f"  (k={k}, n={n}): got {got}, want {(classes, totally)}")
            ok = False
    report(3, f"table 2 class counts exact for {len(TABLE2)} (k, n) pairs", ok)


def test_criterion_04_table1_statistics():
    ok = True
    for (k, n), (mins, min_ratio, avg, std) in sorted(TABLE1.items()):
        r = class_scan(n, k).stats
        row_ok = r.min_sync == mins
        row_ok &= round3(r.avg) == avg
        row_ok &= round3(r.std_dev) == std
        if min_ratio is not None:
            row_ok &= round3(r.min_ratio) == min_ratio
        if not row_ok:
            print(f"  (k={k}, n={n}): min={r.min_sync} avg={round3(r.avg)} "
                  f"std={round3(r.std_dev)} minratio={round3(r.min_ratio)}")
            ok = False
    report(4, f"table 1 statistics exact/3-decimal for {len(TABLE1)} rows", ok)


def test_criterion_05_gap_distributions():
    ok = True
    for n, min_key in [(6, 30), (7, 64)]:
        scan = class_scan(n, 2)
        hist = scan.histogram
        total_ok = sum(hist.values()) == TABLE2[(2, n)][0]
        divis_ok = all(v % 2 == 0 for v in hist)
        min_ok = min(hist) == min_key
        if not (total_ok and divis_ok and min_ok):
            print(f"  (2,{n}): total_ok={total_ok} divisible_ok={divis_ok} "
                  f"min={min(hist)} want {min_key}")
            ok = False
    report(5, "gap histograms at (2,6) and (2,7): totals, k! divisibility, minima", ok)


@pytest.mark.skipif(not EXTENDED, reason=(
    "optional multi-hour target; also unreachable through the seeded "
    "pipeline, whose simple-graph seeding is bounded at 7 vertices"))
def test_criterion_05_extended_gap_table_2_8():
    scan = class_scan(8, 2)
    hist = scan.histogram
    expected = {128: 72, 160: 24, 192: 813, 256: 6_754_895}
    ok = all(hist.get(value) == count for value, count in expected.items())
    report("5-extended", f"(2,8) gap cells {expected}", ok)


def test_criterion_06_oracle_equivalence():
    checked = 0
    mismatches = 0
    for n in range(1, 6):
        for d in sc.enumerate_primitive_digraphs(n, 2):
            for a in sc.enumerate_distinct_automata(d):
                checked += 1
                if sc.is_synchronizing(a) != (sc.shortest_reset_word(a) is not None):
                    mismatches += 1
    rng = random.Random(0xACCE)
    for _ in range(100_000):
        n = rng.randrange(1, 9)
        k = rng.randrange(1, 4)
        a = oracles.random_automaton(rng, n, k)
        checked += 1
        if sc.is_synchronizing(a) != (sc.shortest_reset_word(a) is not None):
            mismatches += 1
    report(6, f"pair criterion vs subset oracle on {checked} automata, "
              f"{mismatches} disagreements", mismatches == 0)


def test_criterion_07_census_equivalence():
    checked = 0
    ok = True
    for k in (2, 3):
        for n in range(1, 5):
            for d in sc.enumerate_primitive_digraphs(n, k):
                full = sc.census(d, "full")
                if not (full == sc.census(d, "reduced") == sc.census_naive(d)):
                    ok = False
                checked += 1
    report(7, f"full = reduced = naive census on {checked} digraphs (n<=4, k<=3)", ok)


def test_criterion_08_enumeration_cross_validation():
    ok = True
    pairs = [(n, k) for n in range(1, 6) for k in (1, 2, 3)]
    for n, k in pairs:
        opts = ScanOptions(with_census=False, collect_keys=True)
        seeded = run_scan("seeded", n, k, opts, workers=WORKERS)
        direct = run_scan("direct", n, k, opts, workers=WORKERS)
        if set(seeded.keys) != set(direct.keys):
            print(f"  (n={n}, k={k}): seeded {len(seeded.keys)} keys, "
                  f"direct {len(direct.keys)} keys")
            ok = False
    report(8, f"seeded and direct key sets identical for {len(pairs)} (n, k) pairs", ok)


def test_criterion_09_random_model_calibration():
    """Expected FAIL, kept failing on purpose.

    The sampler draws every edge destination independently and uniformly,
    so it weights each digraph by its number of distinct transition tables
    and estimates that weighted fraction. At (6,2) the exact weighted
    value, computed by enumerating all 19,064 classes with their orbit
    sizes and table counts, is 427614/655054 = 0.65279; the unweighted
    isomorphism-class fraction is 14973/19064 = 0.78540. The assertion
    below compares the estimate against the class fraction 0.785 at the
    binomial 3-sigma radius (about 0.004), which no amount of sampling
    from this model can satisfy.
    """
    cfg = sc.RandomModelConfig(n=6, k=2, samples=100_000, seed=0x5EED,
                               filter="sc-aperiodic")
    res = sc.random_experiment(cfg, workers=WORKERS)
    est = float(res.fraction_totally)
    ok = abs(est - 0.785) <= res.conf_radius_3sigma
    print(f"\n  estimate {est:.5f} +- {res.conf_radius_3sigma:.5f} (3-sigma), "
          f"target 0.785; exact model value 0.65279, class fraction 0.78540")
    report(9, "random-model estimate within 3-sigma of the class fraction 0.785", ok)


def test_criterion_10_determinism_across_worker_counts():
    ok = True
    # Exhaustive scan: identical aggregates, keys and rendered CSV bytes.
    s1 = sc.scan_class(4, 2, workers=1)
    s2 = sc.scan_class(4, 2, workers=2)
    ok &= (s1.stats, s1.histogram, s1.keys) == (s2.stats, s2.histogram, s2.keys)
    ok &= table1_csv([s1.stats]) == table1_csv([s2.stats])
    ok &= table2_csv([s1.stats]) == table2_csv([s2.stats])
    # Enumeration record stream: identical order and content.
    streams = {}
    for w in (1, 2):
        acc = []
        run_scan("seeded", 3, 2, ScanOptions(collect_records=True), workers=w,
                 on_chunk=lambda idx, res: acc.extend(res["records"]))
        streams[w] = acc
    ok &= streams[1] == streams[2]
    # Random experiment: identical stats for identical seeds.
    cfg = sc.RandomModelConfig(n=4, k=2, samples=4000, seed=11, filter="sc-aperiodic")
    r1 = sc.random_experiment(cfg, workers=1)
    r2 = sc.random_experiment(cfg, workers=2)
    ok &= r1.stats == r2.stats and r1.attempts == r2.attempts
    report(10, "same seed, worker counts 1 vs 2: byte-identical outputs", ok)
