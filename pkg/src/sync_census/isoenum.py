"""Enumeration of nonisomorphic k-out-regular digraphs.

Canonical form: the lexicographically minimal flattened destination table
over all vertex relabelings, serialized as bytes. Equal keys characterize
isomorphism. The search builds relabelings in discovery order (a new label
is introduced the first time its vertex is needed), which is exactly the
shape minimal tables have, and prunes against the best table found so far.

Class enumeration has two modes. Seeded mode generates digraphs from one
representative per isomorphism class of simple graphs by orienting and
multiplying edges and filling the remaining out-degree with loops; a
per-seed set of canonical keys removes duplicates, and digraphs from
different seeds can never be isomorphic. Direct mode walks every labeled
destination table in lexicographic order and keeps exactly the tables that
are their own canonical form, so it needs no dedup set at all. Both modes
must produce identical key sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .analysis import _primitive_rows, is_primitive
from .census import BudgetError
from .digraph import Digraph, validate

MAX_CANON_N = 9
MAX_SIMPLE_N = 7
DEFAULT_DIRECT_BUDGET = 200_000_000


class _FoundSmaller(Exception):
    """Abort signal: some relabeling beats the table under test."""


def canonical_key(d: Digraph) -> bytes:
    """Minimal flattened destination table over all relabelings, as bytes."""
    msg = validate(d)
    if msg is not None:
        raise ValueError(f"invalid digraph: {msg}")
    if d.n > MAX_CANON_N:
        raise ValueError(f"canonical form supports n <= {MAX_CANON_N}, got n={d.n}")
    return bytes(_canonical_flat(d.dests, d.n, d.k))


def is_canonical_table(rows, n, k) -> bool:
    """Whether a destination table is its own canonical form.

    Runs the same search seeded with the table itself as the incumbent and
    aborts at the first strictly smaller relabeling. Exactly one labeled
    table per isomorphism class passes.
    """
    flat = [x for row in rows for x in row]
    try:
        _canonical_flat(rows, n, k, init_best=flat, abort_on_improve=True)
    except _FoundSmaller:
        return False
    return True


def _row0_signature(dests, v):
    """First row of a table starting at v: loops become label 0, fresh
    labels follow with larger multiplicities first."""
    loops = 0
    mults = {}
    for x in dests[v]:
        if x == v:
            loops += 1
        else:
            mults[x] = mults.get(x, 0) + 1
    out = [0] * loops
    lab = 1
    for m in sorted(mults.values(), reverse=True):
        out.extend([lab] * m)
        lab += 1
    return tuple(out)


def _canonical_flat(dests, n, k, init_best=None, abort_on_improve=False):
    best = init_best
    rows0 = [_row0_signature(dests, v) for v in range(n)]
    best0 = min(rows0)
    starts = [v for v in range(n) if rows0[v] == best0]

    inv = [-1] * n    # inv[original] = new label
    perm = [-1] * n   # perm[new label] = original
    cand = [0] * (n * k)

    def emit_row(i, next_label, tight):
        # Table row i belongs to vertex perm[i]; destinations without a
        # label receive the next consecutive fresh labels. Branch over the
        # distinct assignments; returns True when best improved below.
        nonlocal best
        row = dests[perm[i]]
        labeled = []
        unlab = {}
        for x in row:
            lx = inv[x]
            if lx >= 0:
                labeled.append(lx)
            else:
                unlab[x] = unlab.get(x, 0) + 1
        base = i * k
        if not unlab:
            labeled.sort()
            if tight:
                seg = best[base:base + k]
                if labeled > seg:
                    return False
                tight = labeled == seg
            cand[base:base + k] = labeled
            return rec(i + 1, next_label, tight)
        uverts = sorted(unlab, key=lambda x: (-unlab[x], x))
        j = len(uverts)
        updated = False
        for order in itertools.permutations(uverts):
            rowlab = labeled.copy()
            for t, x in enumerate(order):
                rowlab.extend([next_label + t] * unlab[x])
            rowlab.sort()
            t2 = tight
            if tight:
                seg = best[base:base + k]
                if rowlab > seg:
                    continue
                t2 = rowlab == seg
            cand[base:base + k] = rowlab
            for t, x in enumerate(order):
                inv[x] = next_label + t
                perm[next_label + t] = x
            if rec(i + 1, next_label + j, t2):
                updated = True
                tight = True  # best now extends the prefix written here
            for x in order:
                perm[inv[x]] = -1
                inv[x] = -1
        return updated

    def rec(i, next_label, tight):
        nonlocal best
        if i == n:
            if tight:
                return False
            if best is None or cand < best:
                if abort_on_improve:
                    raise _FoundSmaller
                best = cand.copy()
                return True
            return False
        if perm[i] >= 0:
            return emit_row(i, next_label, tight)
        # Label i was never discovered as a destination: the labeled prefix
        # is a closed subsystem, so any unlabeled vertex may come next.
        updated = False
        for u in range(n):
            if inv[u] < 0:
                inv[u] = i
                perm[i] = u
                if emit_row(i, next_label + 1, tight):
                    updated = True
                    tight = True
                perm[i] = -1
                inv[u] = -1
        return updated

    for s in starts:
        for x in range(n):
            inv[x] = -1
            perm[x] = -1
        inv[s] = 0
        perm[0] = s
        rec(0, 1, best is not None)
    return best


def digraph_from_key(key: bytes, n: int, k: int) -> Digraph:
    """Rebuild the canonical representative from its key."""
    if len(key) != n * k:
        raise ValueError(f"key length {len(key)} does not match n*k = {n * k}")
    rows = tuple(tuple(key[v * k:(v + 1) * k]) for v in range(n))
    return Digraph(n, k, rows)


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected graph without loops or parallel edges; edges as sorted
    (u, v) pairs with u < v."""

    n: int
    edges: tuple[tuple[int, int], ...]


def _edge_positions(n):
    """Fixed ordering of the n(n-1)/2 potential edges."""
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def _edge_perm_maps(n):
    """For each vertex permutation, where each edge bit position comes from."""
    pos = _edge_positions(n)
    idx = {e: i for i, e in enumerate(pos)}
    maps = []
    for p in itertools.permutations(range(n)):
        maps.append(tuple(idx[(p[u], p[v])] if p[u] < p[v] else idx[(p[v], p[u])]
                          for (u, v) in pos))
    return maps


def simple_graph_from_mask(n: int, mask: int) -> SimpleGraph:
    pos = _edge_positions(n)
    edges = tuple(pos[i] for i in range(len(pos)) if (mask >> i) & 1)
    return SimpleGraph(n, edges)


def simple_graph_mask(g: SimpleGraph) -> int:
    pos = _edge_positions(g.n)
    idx = {e: i for i, e in enumerate(pos)}
    mask = 0
    for e in g.edges:
        mask |= 1 << idx[e]
    return mask


def enumerate_simple_graph_masks(n: int):
    """Minimal edge bitmask of each isomorphism class, ascending."""
    if not 1 <= n <= MAX_SIMPLE_N:
        raise ValueError(f"simple graph enumeration supports 1 <= n <= {MAX_SIMPLE_N}")
    pos = _edge_positions(n)
    m = len(pos)
    maps = _edge_perm_maps(n)
    seen = bytearray(1 << m)
    out = []
    for mask in range(1 << m):
        if seen[mask]:
            continue
        # First unseen mask in ascending scan is its orbit minimum.
        for emap in maps:
            img = 0
            for i in range(m):
                if (mask >> emap[i]) & 1:
                    img |= 1 << i
            seen[img] = 1
        out.append(mask)
    return out


def enumerate_simple_graphs(n: int):
    """One representative per isomorphism class of simple graphs on n
    vertices, in ascending order of the minimal edge bitmask."""
    for mask in enumerate_simple_graph_masks(n):
        yield simple_graph_from_mask(n, mask)


def orient_and_multiply(g: SimpleGraph, k: int):
    """All k-out-regular digraphs whose underlying simple graph is g.

    Every edge {u, v} takes multiplicities a of u->v and b of v->u with
    a + b >= 1, non-loop out-degrees stay at most k, and leftover
    out-degree becomes loops. Deterministic generation order: edges sorted
    ascending, (a, b) pairs in nested ascending order.
    """
    n = g.n
    edges = sorted(g.edges)
    cap = [k] * n
    out = [[] for _ in range(n)]

    def emit():
        rows = []
        for v in range(n):
            row = out[v] + [v] * cap[v]
            row.sort()
            rows.append(tuple(row))
        return Digraph(n, k, tuple(rows))

    def rec(i):
        if i == len(edges):
            yield emit()
            return
        u, v = edges[i]
        cu, cv = cap[u], cap[v]
        for a in range(cu + 1):
            for b in range(cv + 1):
                if a + b == 0:
                    continue
                cap[u] -= a
                cap[v] -= b
                if a:
                    out[u].extend([v] * a)
                if b:
                    out[v].extend([u] * b)
                yield from rec(i + 1)
                if a:
                    del out[u][-a:]
                if b:
                    del out[v][-b:]
                cap[u] += a
                cap[v] += b

    yield from rec(0)


def _direct_row_options(n, k):
    return list(itertools.combinations_with_replacement(range(n), k))


def direct_candidate_count(n: int, k: int) -> int:
    return comb(n + k - 1, k) ** n


def seed_classes(g: SimpleGraph, k: int):
    """Primitive classes arising from one simple-graph seed, in generation
    order, deduplicated by canonical key within the seed."""
    canset = set()
    for d in orient_and_multiply(g, k):
        if not _primitive_rows(d.dests, d.n):
            continue
        # Valid by construction; skip the public entry point's validation.
        key = bytes(_canonical_flat(d.dests, d.n, d.k))
        if key not in canset:
            canset.add(key)
            yield key, d


def direct_classes_range(n, k, first_lo, first_hi):
    """Primitive classes whose canonical table starts with one of the given
    first rows, scanning labeled tables in lexicographic order and keeping
    the self-canonical ones."""
    options = _direct_row_options(n, k)
    for idx in range(first_lo, first_hi):
        first = options[idx]
        for rest in itertools.product(options, repeat=n - 1):
            rows = (first,) + rest
            if not _primitive_rows(rows, n):
                continue
            if not is_canonical_table(rows, n, k):
                continue
            yield bytes(x for row in rows for x in row), Digraph(n, k, rows)


def enumerate_primitive_classes(n, k, mode="seeded", budget=DEFAULT_DIRECT_BUDGET):
    """Yield (canonical_key, digraph) for one representative per
    isomorphism class of primitive k-out-regular digraphs."""
    if mode == "seeded":
        seen_global = set()
        for g in enumerate_simple_graphs(n):
            for key, d in seed_classes(g, k):
                if key in seen_global:
                    raise AssertionError(
                        "canonical key collision across simple-graph seeds"
                    )
                seen_global.add(key)
                yield key, d
    elif mode == "direct":
        total = direct_candidate_count(n, k)
        if total > budget:
            raise BudgetError(
                f"direct mode would scan {total} labeled tables, over the budget of {budget}"
            )
        yield from direct_classes_range(n, k, 0, comb(n + k - 1, k))
    else:
        raise ValueError(f"unknown enumeration mode {mode!r}")


def enumerate_primitive_digraphs(n, k, mode="seeded", budget=DEFAULT_DIRECT_BUDGET):
    """One representative per isomorphism class of primitive k-out-regular
    digraphs with n vertices."""
    for _, d in enumerate_primitive_classes(n, k, mode, budget):
        yield d


def shuffle_digraph(d: Digraph, perm) -> Digraph:
    """Relabel vertices by perm (perm[old] = new); isomorphic copy."""
    rows = [None] * d.n
    for v in range(d.n):
        rows[perm[v]] = tuple(sorted(perm[x] for x in d.dests[v]))
    return Digraph(d.n, d.k, tuple(rows))
