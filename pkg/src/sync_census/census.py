"""Exact counting of synchronizing colorings of a digraph.

Colorings are counted over distinguishable edges, so a digraph always has
exactly (k!)^n of them. Parallel edges make distinct colorings collapse to
the same transition table; each distinct automaton stands for the same
number W of colorings, where W is the product over vertices of the
factorials of the destination multiplicities. Counting therefore runs over
distinct automata and scales by W. When some vertex has k pairwise distinct
destinations, the color permutation group acts freely on distinct automata
and only one representative per k!-orbit needs checking.

All counts are exact Python integers; ratios are exact Fractions.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .analysis import sink_reduction
from .digraph import Automaton, Digraph, multiplicity_profile, validate
from .sync import _sync_rows, _tri_base, shortest_reset_word

DEFAULT_AUTOMATA_BUDGET = 5_000_000


class BudgetError(RuntimeError):
    """Raised when a census would enumerate more automata than allowed."""


@dataclass(frozen=True)
class CensusResult:
    """Exact synchronization counts for one digraph."""

    n: int
    k: int
    sync_colorings: int
    total_colorings: int
    distinct_automata: int
    weight: int
    sync_automata: int
    ratio: Fraction

    @property
    def totally_synchronizing(self) -> bool:
        return self.ratio == 1

    def to_json_dict(self):
        """Exact integers as decimal strings plus a convenience float ratio
        rounded to 6 decimals."""
        return {
            "n": self.n,
            "k": self.k,
            "sync_colorings": str(self.sync_colorings),
            "total_colorings": str(self.total_colorings),
            "distinct_automata": str(self.distinct_automata),
            "weight": str(self.weight),
            "sync_automata": str(self.sync_automata),
            "ratio": round(self.sync_colorings / self.total_colorings, 6),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))


def _require_valid(d: Digraph):
    msg = validate(d)
    if msg is not None:
        raise ValueError(f"invalid digraph: {msg}")


def digraph_weight(d: Digraph) -> int:
    """Colorings per distinct automaton: prod over vertices and parallel
    bundles of multiplicity!."""
    w = 1
    for pairs in multiplicity_profile(d):
        for _, m in pairs:
            w *= factorial(m)
    return w


def count_distinct_automata(d: Digraph) -> int:
    """prod over vertices of k! / prod of multiplicities!."""
    kf = factorial(d.k)
    total = 1
    for pairs in multiplicity_profile(d):
        denom = 1
        for _, m in pairs:
            denom *= factorial(m)
        total *= kf // denom
    return total


def _vertex_arrangements(row):
    """Distinct orderings of one destination multiset, lexicographic."""
    return sorted(set(itertools.permutations(row)))


def enumerate_distinct_automata(d: Digraph, budget=DEFAULT_AUTOMATA_BUDGET):
    """Yield each transition table consistent with d exactly once.

    Deterministic order: per-vertex arrangements in lexicographic row
    order, vertices ascending (the last vertex varies fastest). Raises
    BudgetError when the count exceeds the budget.
    """
    _require_valid(d)
    count = count_distinct_automata(d)
    if count > budget:
        raise BudgetError(
            f"{count} distinct automata exceed the budget of {budget}"
        )
    options = [_vertex_arrangements(row) for row in d.dests]
    for rows in itertools.product(*options):
        yield Automaton(d.n, d.k, rows)


def _result(d, sync_automata):
    w = digraph_weight(d)
    distinct = count_distinct_automata(d)
    total = factorial(d.k) ** d.n
    assert distinct * w == total
    sync_col = sync_automata * w
    assert sync_col % factorial(d.k) == 0
    return CensusResult(
        n=d.n,
        k=d.k,
        sync_colorings=sync_col,
        total_colorings=total,
        distinct_automata=distinct,
        weight=w,
        sync_automata=sync_automata,
        ratio=Fraction(sync_col, total),
    )


def _reduction_pivot(d: Digraph):
    """Lowest vertex with k pairwise distinct destinations, or None."""
    for v, row in enumerate(d.dests):
        if len(set(row)) == d.k:
            return v
    return None


def census(d: Digraph, mode: str = "reduced", budget=DEFAULT_AUTOMATA_BUDGET) -> CensusResult:
    """Exact census of synchronizing colorings.

    mode "full" checks every distinct automaton; mode "reduced" fixes the
    color assignment of a pivot vertex with k distinct destinations and
    scales by k! (falling back to full when no such vertex exists). Both
    modes return identical results.
    """
    _require_valid(d)
    if mode not in ("full", "reduced"):
        raise ValueError(f"unknown census mode {mode!r}")
    n, k = d.n, d.k
    options = [_vertex_arrangements(row) for row in d.dests]
    scale = 1
    if mode == "reduced":
        pivot = _reduction_pivot(d)
        if pivot is not None:
            options[pivot] = [tuple(d.dests[pivot])]
            scale = factorial(k)
    checked = 1
    for opt in options:
        checked *= len(opt)
    if checked > budget:
        raise BudgetError(
            f"{checked} automata to check exceed the budget of {budget}"
        )
    tri = _tri_base(n)
    sync = 0
    for rows in itertools.product(*options):
        if _sync_rows(rows, n, k, tri):
            sync += 1
    return _result(d, sync * scale)


def is_totally_synchronizing(d: Digraph, budget=DEFAULT_AUTOMATA_BUDGET) -> bool:
    """True iff every coloring synchronizes; stops at the first failure."""
    _require_valid(d)
    options = [_vertex_arrangements(row) for row in d.dests]
    pivot = _reduction_pivot(d)
    if pivot is not None:
        options[pivot] = [tuple(d.dests[pivot])]
    checked = 1
    for opt in options:
        checked *= len(opt)
    if checked > budget:
        raise BudgetError(
            f"{checked} automata to check exceed the budget of {budget}"
        )
    n, k = d.n, d.k
    tri = _tri_base(n)
    for rows in itertools.product(*options):
        if not _sync_rows(rows, n, k, tri):
            return False
    return True


def count_via_sink(d: Digraph, mode: str = "reduced", budget=DEFAULT_AUTOMATA_BUDGET) -> CensusResult:
    """Census through the sink-component reduction.

    With a unique sink component S, the synchronizing ratio of d equals the
    ratio of the digraph induced by S, so the count for d is that ratio
    scaled to (k!)^n. Without a unique sink component nothing synchronizes.
    """
    _require_valid(d)
    red = sink_reduction(d)
    w = digraph_weight(d)
    distinct = count_distinct_automata(d)
    total = factorial(d.k) ** d.n
    if red is None:
        return CensusResult(
            n=d.n,
            k=d.k,
            sync_colorings=0,
            total_colorings=total,
            distinct_automata=distinct,
            weight=w,
            sync_automata=0,
            ratio=Fraction(0),
        )
    if red.induced is d:
        return census(d, mode, budget)
    inner = census(red.induced, mode, budget)
    sync_col = inner.sync_colorings * factorial(d.k) ** (d.n - red.induced.n)
    assert sync_col % w == 0
    return CensusResult(
        n=d.n,
        k=d.k,
        sync_colorings=sync_col,
        total_colorings=total,
        distinct_automata=distinct,
        weight=w,
        sync_automata=sync_col // w,
        ratio=Fraction(sync_col, total),
    )


def census_naive(d: Digraph) -> CensusResult:
    """Brute-force reference census over edge-labeled colorings.

    Expands all (k!)^n colorings (every bijection of colors to each
    vertex's edge slots) and checks each resulting automaton with the
    subset-BFS oracle. Independent of both the pair criterion and the
    weight bookkeeping; intended for cross-validation at tiny sizes.
    """
    _require_valid(d)
    n, k = d.n, d.k
    slot_orders = list(itertools.permutations(range(k)))
    sync = 0
    for assignment in itertools.product(slot_orders, repeat=n):
        rows = tuple(
            tuple(d.dests[v][assignment[v][c]] for c in range(k))
            for v in range(n)
        )
        if shortest_reset_word(Automaton(n, k, rows)) is not None:
            sync += 1
    w = digraph_weight(d)
    assert sync % w == 0
    return _result(d, sync // w)
