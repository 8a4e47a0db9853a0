"""Structural predicates: strong connectivity, aperiodicity, sink components.

A digraph is primitive (aperiodic) when it is strongly connected and the gcd
of all its directed cycle lengths is 1. Primitivity is the structural
precondition for having any synchronizing coloring at all, and the census of
a non-strongly-connected digraph reduces to the census of its unique sink
component when one exists.

The _rows helpers operate on raw destination tables; enumeration scans call
them millions of times, so they avoid building Digraph objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .digraph import Digraph


@dataclass(frozen=True)
class SccDecomposition:
    """Strongly connected components with condensation structure.

    comp_id[v] is the component index of vertex v; components[i] is the
    sorted tuple of vertices in component i; condensation_edges are the
    (from_comp, to_comp) pairs with from_comp != to_comp; sink_components
    are the component indices with no outgoing condensation edges;
    reachable_from_all[i] tells whether component i can be reached from
    every vertex of the digraph.
    """

    comp_id: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    condensation_edges: frozenset[tuple[int, int]]
    sink_components: tuple[int, ...]
    reachable_from_all: tuple[bool, ...]


@dataclass(frozen=True)
class SinkReduction:
    """Digraph induced by the unique sink component.

    vertices[i] is the original vertex carried to induced vertex i; the
    induced digraph is k-out-regular because no edge leaves a sink
    component.
    """

    induced: Digraph
    vertices: tuple[int, ...]


def _bfs_levels(rows, n):
    """BFS levels from vertex 0, or None when not all vertices are reached."""
    level = [-1] * n
    level[0] = 0
    frontier = [0]
    count = 1
    while frontier:
        nxt = []
        for u in frontier:
            lu1 = level[u] + 1
            prev = -1
            for v in rows[u]:
                if v != prev:  # rows are sorted, so equal neighbors adjoin
                    prev = v
                    if level[v] < 0:
                        level[v] = lu1
                        nxt.append(v)
        count += len(nxt)
        frontier = nxt
    return level if count == n else None


def _reaches_all_reverse(rows, n):
    """Whether vertex 0 is reachable from every vertex."""
    radj = [[] for _ in range(n)]
    for u in range(n):
        prev = -1
        for v in rows[u]:
            if v != prev:
                prev = v
                radj[v].append(u)
    seen = bytearray(n)
    seen[0] = 1
    count = 1
    stack = [0]
    while stack:
        u = stack.pop()
        for v in radj[u]:
            if not seen[v]:
                seen[v] = 1
                count += 1
                stack.append(v)
    return count == n


def _sc_rows(rows, n):
    if n == 1:
        return True
    return _bfs_levels(rows, n) is not None and _reaches_all_reverse(rows, n)


def _gcd_of_level_jumps(rows, n, level):
    g = 0
    for u in range(n):
        lu1 = level[u] + 1
        for v in rows[u]:
            g = gcd(g, lu1 - level[v])
            if g == 1:
                return 1
    return g


def _primitive_rows(rows, n):
    """Strongly connected and aperiodic, straight off the table."""
    level = _bfs_levels(rows, n)
    if level is None:
        return False
    if n > 1 and not _reaches_all_reverse(rows, n):
        return False
    return _gcd_of_level_jumps(rows, n, level) == 1


def is_strongly_connected(d: Digraph) -> bool:
    """True iff every vertex reaches every other. O(kn) double sweep."""
    return _sc_rows(d.dests, d.n)


def is_aperiodic(d: Digraph) -> bool:
    """True iff the gcd of all cycle lengths is 1.

    Requires a strongly connected digraph (raises ValueError otherwise).
    Computed as the gcd, over every edge u->v, of level(u)+1-level(v) for
    BFS levels from vertex 0; for strongly connected digraphs this gcd
    equals the gcd of all cycle lengths.
    """
    if not is_strongly_connected(d):
        raise ValueError(
            "aperiodicity is defined here only for strongly connected digraphs"
        )
    level = _bfs_levels(d.dests, d.n)
    return _gcd_of_level_jumps(d.dests, d.n, level) == 1


def is_primitive(d: Digraph) -> bool:
    """Strongly connected and aperiodic."""
    return _primitive_rows(d.dests, d.n)


def scc_decomposition(d: Digraph) -> SccDecomposition:
    """Tarjan's algorithm (iterative) plus condensation bookkeeping."""
    n = d.n
    adj = []
    for row in d.dests:
        nb = []
        prev = -1
        for x in row:
            if x != prev:
                nb.append(x)
                prev = x
        adj.append(nb)
    index = [-1] * n
    low = [0] * n
    on_stack = bytearray(n)
    stack = []
    comp_id = [-1] * n
    components = []
    counter = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        while work:
            u, pos = work.pop()
            if pos == 0:
                index[u] = low[u] = counter
                counter += 1
                stack.append(u)
                on_stack[u] = 1
            recurse = False
            for i in range(pos, len(adj[u])):
                v = adj[u][i]
                if index[v] < 0:
                    work.append((u, i + 1))
                    work.append((v, 0))
                    recurse = True
                    break
                if on_stack[v]:
                    low[u] = min(low[u], index[v])
            if recurse:
                continue
            if low[u] == index[u]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = 0
                    comp_id[w] = len(components)
                    comp.append(w)
                    if w == u:
                        break
                components.append(tuple(sorted(comp)))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[u])

    cond = set()
    for u, nb in enumerate(adj):
        cu = comp_id[u]
        for v in nb:
            cv = comp_id[v]
            if cu != cv:
                cond.add((cu, cv))
    m = len(components)
    has_out = bytearray(m)
    for cu, _cv in cond:
        has_out[cu] = 1
    sinks = tuple(i for i in range(m) if not has_out[i])

    # Component i is reachable from all vertices iff every condensation node
    # reaches it; walk the reversed condensation from i.
    radj = [[] for _ in range(m)]
    for cu, cv in cond:
        radj[cv].append(cu)
    reach_all = []
    for i in range(m):
        seen = bytearray(m)
        seen[i] = 1
        cnt = 1
        st = [i]
        while st:
            c = st.pop()
            for b in radj[c]:
                if not seen[b]:
                    seen[b] = 1
                    cnt += 1
                    st.append(b)
        reach_all.append(cnt == m)

    return SccDecomposition(
        comp_id=tuple(comp_id),
        components=tuple(components),
        condensation_edges=frozenset(cond),
        sink_components=sinks,
        reachable_from_all=tuple(reach_all),
    )


def sink_reduction(d: Digraph):
    """Digraph induced by the unique sink component, or None when the sink
    component is not unique (no coloring can synchronize in that case).

    A unique sink component is automatically reachable from every vertex,
    so uniqueness is the whole check.
    """
    scc = scc_decomposition(d)
    if len(scc.sink_components) != 1:
        return None
    sink = scc.sink_components[0]
    verts = scc.components[sink]
    if len(verts) == d.n:
        return SinkReduction(induced=d, vertices=tuple(range(d.n)))
    new_id = {v: i for i, v in enumerate(verts)}
    rows = tuple(
        tuple(sorted(new_id[x] for x in d.dests[v])) for v in verts
    )
    return SinkReduction(
        induced=Digraph(len(verts), d.k, rows), vertices=verts
    )
