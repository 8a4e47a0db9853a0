"""Exact statistics over digraph classes and random-digraph experiments.

Exhaustive scans aggregate the census of every nonisomorphic primitive
digraph for a given (n, k): minimum, average, population standard deviation
of the synchronizing-coloring count, the totally synchronizing fraction,
and the full histogram with its gaps. Random experiments draw labeled
digraphs with uniformly random edge destinations (optionally rejection
filtered to the strongly connected aperiodic class) and estimate the same
quantities.

CSV output rounds to 3 decimals, half up; manifests keep exact integers as
decimal strings.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from math import factorial

from .analysis import _primitive_rows
from .census import DEFAULT_AUTOMATA_BUDGET, BudgetError
from .digraph import Digraph
from .pipeline import RunDir, ScanOptions, ScanOutcome, run_scan

DEFAULT_REJECTION_CAP = 1_000_000


@dataclass
class StatsRecord:
    """Exact aggregate of synchronizing-coloring counts over a population
    of digraphs (isomorphism classes for exhaustive scans, samples for
    random runs)."""

    k: int
    n: int
    count: int = 0
    min_sync: int | None = None
    sum_sync: int = 0
    sumsq_sync: int = 0
    totally_sync: int = 0

    @property
    def total_colorings(self) -> int:
        return factorial(self.k) ** self.n

    @property
    def min_ratio(self):
        if self.min_sync is None:
            return None
        return Fraction(self.min_sync, self.total_colorings)

    @property
    def avg(self):
        if self.count == 0:
            return None
        return Fraction(self.sum_sync, self.count)

    @property
    def avg_ratio(self):
        if self.count == 0:
            return None
        return self.avg / self.total_colorings

    @property
    def std_dev(self):
        """Population standard deviation (divide by count)."""
        if self.count == 0:
            return None
        var = Fraction(self.sumsq_sync, self.count) - self.avg ** 2
        return math.sqrt(var)

    @property
    def fraction_totally(self):
        if self.count == 0:
            return None
        return Fraction(self.totally_sync, self.count)

    def update(self, sync_colorings: int, totally: bool):
        self.count += 1
        if self.min_sync is None or sync_colorings < self.min_sync:
            self.min_sync = sync_colorings
        self.sum_sync += sync_colorings
        self.sumsq_sync += sync_colorings * sync_colorings
        if totally:
            self.totally_sync += 1

    def merge(self, other: "StatsRecord") -> "StatsRecord":
        if (self.n, self.k) != (other.n, other.k):
            raise ValueError("cannot merge records for different (n, k)")
        mins = [m for m in (self.min_sync, other.min_sync) if m is not None]
        return StatsRecord(
            k=self.k,
            n=self.n,
            count=self.count + other.count,
            min_sync=min(mins) if mins else None,
            sum_sync=self.sum_sync + other.sum_sync,
            sumsq_sync=self.sumsq_sync + other.sumsq_sync,
            totally_sync=self.totally_sync + other.totally_sync,
        )


@dataclass
class GapTable:
    """Histogram of synchronizing-coloring counts over a class, plus its
    gaps: maximal runs of k!-multiples, strictly between the smallest and
    largest achieved values, that no digraph achieves."""

    k: int
    n: int
    histogram: dict = field(default_factory=dict)

    def gaps(self):
        if not self.histogram:
            return []
        step = factorial(self.k)
        achieved = sorted(self.histogram)
        lo, hi = achieved[0], achieved[-1]
        have = set(achieved)
        out = []
        start = None
        for value in range(lo + step, hi, step):
            if value in have:
                if start is not None:
                    out.append((start, value - step))
                    start = None
            elif start is None:
                start = value
        if start is not None:
            out.append((start, hi - step))
        return out


@dataclass(frozen=True)
class RandomModelConfig:
    """Uniform random digraph model: every edge slot draws its destination
    independently and uniformly. filter "sc-aperiodic" rejection-samples
    until the draw is primitive."""

    n: int
    k: int
    samples: int = 1
    seed: int = 0
    filter: str = "all"
    rejection_cap: int = DEFAULT_REJECTION_CAP

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be positive")
        if self.filter not in ("all", "sc-aperiodic"):
            raise ValueError(f"unknown filter {self.filter!r}")


@dataclass
class RandomExperimentResult:
    stats: StatsRecord
    fraction_totally: Fraction
    conf_radius_3sigma: float
    attempts: int


def _child_rng(seed, index):
    # String seeding hashes with SHA-512 internally, stable across runs and
    # platforms, and makes per-sample streams independent of chunking.
    return random.Random(f"{seed}:{index}")


def _draw_sample(cfg: RandomModelConfig, index: int):
    """Sample number `index` of the configured stream, with its attempt
    count (rejection sampling when the class filter is on)."""
    rng = _child_rng(cfg.seed, index)
    n, k = cfg.n, cfg.k
    attempts = 0
    while True:
        attempts += 1
        if attempts > cfg.rejection_cap:
            raise BudgetError(
                f"rejection cap {cfg.rejection_cap} exceeded at sample {index}; "
                "the filtered class is too sparse for this model"
            )
        rows = tuple(
            tuple(sorted(rng.randrange(n) for _ in range(k)))
            for _ in range(n)
        )
        if cfg.filter == "all" or _primitive_rows(rows, n):
            return Digraph(n, k, rows), attempts


def sample_random_digraph(cfg: RandomModelConfig, index: int = 0) -> Digraph:
    """One draw from the model (sample `index` of the seeded stream)."""
    return _draw_sample(cfg, index)[0]


def iter_random_digraphs(cfg: RandomModelConfig):
    """The cfg.samples draws of the stream, bit-reproducible per seed."""
    for i in range(cfg.samples):
        yield _draw_sample(cfg, i)[0]


def _stats_from_outcome(n, k, outcome: ScanOutcome) -> StatsRecord:
    return StatsRecord(
        k=k,
        n=n,
        count=outcome.count,
        min_sync=outcome.min_sync,
        sum_sync=outcome.sum_sync,
        sumsq_sync=outcome.sumsq_sync,
        totally_sync=outcome.totally_sync,
    )


@dataclass
class ClassScan:
    """Merged result of one exhaustive scan of a digraph class."""

    n: int
    k: int
    mode: str
    stats: StatsRecord
    histogram: Counter
    keys: list | None
    wall_time_s: float


def scan_class(n, k, mode="seeded", workers=1, with_census=True,
               census_mode="reduced", budget=DEFAULT_AUTOMATA_BUDGET,
               collect_keys=False, run_dir: RunDir | None = None,
               stop_after_chunks=None, on_chunk=None, progress=False) -> ClassScan:
    """Scan all nonisomorphic primitive digraphs for (n, k) and aggregate.

    Seeded scans always collect canonical keys so that cross-seed key
    collisions (which would mean an enumeration bug) are detected.
    """
    opts = ScanOptions(
        with_census=with_census,
        census_mode=census_mode,
        budget=budget,
        collect_keys=collect_keys or mode == "seeded",
        collect_hist=with_census,
    )
    outcome = run_scan(mode, n, k, opts, workers=workers, run_dir=run_dir,
                       stop_after_chunks=stop_after_chunks, on_chunk=on_chunk,
                       progress=progress)
    return ClassScan(
        n=n,
        k=k,
        mode=mode,
        stats=_stats_from_outcome(n, k, outcome),
        histogram=outcome.histogram,
        keys=outcome.keys if (collect_keys or mode == "seeded") else None,
        wall_time_s=outcome.wall_time_s,
    )


def table1_stats(n, k, workers=1, mode="seeded",
                 budget=DEFAULT_AUTOMATA_BUDGET) -> StatsRecord:
    """Min, average and population standard deviation of the number of
    synchronizing colorings over all nonisomorphic primitive digraphs."""
    return scan_class(n, k, mode=mode, workers=workers, budget=budget).stats


def table2_counts(n, k, workers=1, mode="seeded",
                  budget=DEFAULT_AUTOMATA_BUDGET):
    """(primitive class count, totally synchronizing count, fraction)."""
    stats = table1_stats(n, k, workers=workers, mode=mode, budget=budget)
    return stats.count, stats.totally_sync, stats.fraction_totally


def gap_distribution(n, k, workers=1, mode="seeded",
                     budget=DEFAULT_AUTOMATA_BUDGET) -> GapTable:
    """Histogram of synchronizing-coloring counts with its gaps."""
    scan = scan_class(n, k, mode=mode, workers=workers, budget=budget)
    return GapTable(k=k, n=n, histogram=dict(sorted(scan.histogram.items())))


def random_experiment(cfg: RandomModelConfig, workers=1,
                      budget=DEFAULT_AUTOMATA_BUDGET,
                      run_dir: RunDir | None = None,
                      progress=False) -> RandomExperimentResult:
    """Monte Carlo estimate over cfg.samples labeled digraphs.

    The totally synchronizing fraction comes with a 3-sigma binomial
    confidence radius. Identical seeds give identical results for any
    worker count.
    """
    opts = ScanOptions(budget=budget, collect_hist=False)
    outcome = run_scan("random", cfg.n, cfg.k, opts, workers=workers,
                       samples=cfg.samples, extra=cfg.__dict__.copy(),
                       run_dir=run_dir, progress=progress)
    stats = _stats_from_outcome(cfg.n, cfg.k, outcome)
    p = stats.fraction_totally
    radius = 3.0 * math.sqrt(float(p * (1 - p)) / stats.count)
    return RandomExperimentResult(
        stats=stats,
        fraction_totally=p,
        conf_radius_3sigma=radius,
        attempts=outcome.attempts,
    )


# ---------------------------------------------------------------------------
# report formatting

def round3(x) -> str:
    """3 decimals, half up, as a plain string."""
    if isinstance(x, Fraction):
        dec = Decimal(x.numerator) / Decimal(x.denominator)
    else:
        dec = Decimal(repr(float(x)))
    return str(dec.quantize(Decimal("0.001"), rounding=ROUND_HALF_UP))


def round6(x) -> str:
    if isinstance(x, Fraction):
        dec = Decimal(x.numerator) / Decimal(x.denominator)
    else:
        dec = Decimal(repr(float(x)))
    return str(dec.quantize(Decimal("0.000001"), rounding=ROUND_HALF_UP))


TABLE1_HEADER = "k,n,class_size,min,min_ratio,avg,avg_ratio,std_dev"
TABLE2_HEADER = "k,n,primitive,totally_sync,fraction"
GAPS_HEADER = "k,n,sync_colorings,count"
RANDOM_HEADER = ("k,n,samples,filter,seed,min,avg,std_dev,"
                 "totally_sync,fraction,conf_radius_3sigma")


def table1_csv(records) -> str:
    lines = [TABLE1_HEADER]
    for r in records:
        if r.count == 0:
            lines.append(f"{r.k},{r.n},0,,,,,")
            continue
        lines.append(",".join([
            str(r.k), str(r.n), str(r.count), str(r.min_sync),
            round3(r.min_ratio), round3(r.avg), round3(r.avg_ratio),
            round3(r.std_dev),
        ]))
    return "\n".join(lines) + "\n"


def table2_csv(records) -> str:
    lines = [TABLE2_HEADER]
    for r in records:
        frac = "" if r.count == 0 else round3(r.fraction_totally)
        lines.append(f"{r.k},{r.n},{r.count},{r.totally_sync},{frac}")
    return "\n".join(lines) + "\n"


def gaps_csv(tables) -> str:
    lines = [GAPS_HEADER]
    for t in tables:
        for value in sorted(t.histogram):
            lines.append(f"{t.k},{t.n},{value},{t.histogram[value]}")
    return "\n".join(lines) + "\n"


def random_csv(cfg: RandomModelConfig, res: RandomExperimentResult) -> str:
    r = res.stats
    line = ",".join([
        str(cfg.k), str(cfg.n), str(cfg.samples), cfg.filter, str(cfg.seed),
        str(r.min_sync), round3(r.avg), round3(r.std_dev),
        str(r.totally_sync), round6(res.fraction_totally),
        round6(res.conf_radius_3sigma),
    ])
    return RANDOM_HEADER + "\n" + line + "\n"
