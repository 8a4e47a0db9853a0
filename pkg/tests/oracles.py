"""Independent brute-force reference implementations used only by tests.

Everything here is deliberately naive: permutation scans, DFS cycle
enumeration, direct reachability. The point is that none of it shares code
with the library paths it checks.
"""

import itertools
from math import gcd

from sync_census import Automaton, Digraph


def brute_canonical(d: Digraph) -> bytes:
    """Minimal flattened table by scanning all n! relabelings."""
    best = None
    for p in itertools.permutations(range(d.n)):
        inv = [0] * d.n
        for new, old in enumerate(p):
            inv[old] = new
        flat = []
        for new in range(d.n):
            flat.extend(sorted(inv[x] for x in d.dests[p[new]]))
        if best is None or flat < best:
            best = flat
    return bytes(best)


def brute_simple_canonical(n, edges) -> frozenset:
    """Canonical edge set of a simple graph by scanning all relabelings."""
    best = None
    for p in itertools.permutations(range(n)):
        img = sorted(
            (p[u], p[v]) if p[u] < p[v] else (p[v], p[u]) for (u, v) in edges
        )
        if best is None or img < best:
            best = img
    return frozenset(best if best is not None else [])


def pairwise_reachable(d: Digraph) -> bool:
    """Strong connectivity by BFS from every vertex."""
    for s in range(d.n):
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for v in d.dests[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(seen) != d.n:
            return False
    return True


def simple_cycle_lengths(d: Digraph):
    """Lengths of all simple directed cycles (vertex-repetition-free),
    found by DFS from each minimal start vertex."""
    lengths = set()
    n = d.n
    adj = [sorted(set(row)) for row in d.dests]

    def dfs(start, u, depth, onpath):
        for v in adj[u]:
            if v == start:
                lengths.add(depth + 1)
            elif v > start and v not in onpath:
                onpath.add(v)
                dfs(start, v, depth + 1, onpath)
                onpath.remove(v)

    for s in range(n):
        dfs(s, s, 0, {s})
    return lengths


def cycle_gcd(d: Digraph):
    """gcd of all simple cycle lengths (equals the gcd over all cycles)."""
    g = 0
    for length in simple_cycle_lengths(d):
        g = gcd(g, length)
    return g


def subset_synchronizes(a: Automaton) -> bool:
    """Forward closure of the full state set under all letters, checked for
    a singleton image. Independent of the pair criterion."""
    full = frozenset(range(a.n))
    seen = {full}
    stack = [full]
    while stack:
        s = stack.pop()
        if len(s) == 1:
            return True
        for c in range(a.k):
            img = frozenset(a.delta[q][c] for q in s)
            if img not in seen:
                seen.add(img)
                stack.append(img)
    return False


def pair_mergeable(a: Automaton, p, q) -> bool:
    """Whether some word sends p and q to the same state (forward BFS on
    state pairs)."""
    start = (p, q) if p <= q else (q, p)
    seen = {start}
    stack = [start]
    while stack:
        x, y = stack.pop()
        if x == y:
            return True
        for c in range(a.k):
            nx, ny = a.delta[x][c], a.delta[y][c]
            nxt = (nx, ny) if nx <= ny else (ny, nx)
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return False


def random_digraph(rng, n, k) -> Digraph:
    return Digraph(
        n, k,
        tuple(tuple(sorted(rng.randrange(n) for _ in range(k))) for _ in range(n)),
    )


def random_automaton(rng, n, k) -> Automaton:
    return Automaton(
        n, k,
        tuple(tuple(rng.randrange(n) for _ in range(k)) for _ in range(n)),
    )


def random_primitive_digraph(rng, n, k) -> Digraph:
    from sync_census import is_primitive

    while True:
        d = random_digraph(rng, n, k)
        if is_primitive(d):
            return d
