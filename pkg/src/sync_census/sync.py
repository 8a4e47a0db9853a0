"""Synchronization tests for automata.

Two independent routes are provided. is_synchronizing runs the standard
pair criterion in O(kn^2): an automaton is synchronizing iff every pair of
states can be merged, which a single backward BFS from the directly
mergeable pairs decides. shortest_reset_word is the slow exact oracle: BFS
over subsets of the state set, returning a genuinely shortest reset word.
The two must always agree; the test suite holds them against each other.
"""

from __future__ import annotations

from collections import deque

from .digraph import Automaton

# Subset-BFS oracle explores up to 2^n subsets.
MAX_ORACLE_N = 20


def _tri_base(n):
    """Offsets so that the pair p<q has index tri[p] + q."""
    tri = [0] * n
    acc = 0
    for p in range(n):
        tri[p] = acc - p - 1
        acc += n - p - 1
    return tri


def _sync_rows(rows, n, k, tri):
    """Pair criterion on a raw transition table (tuple of rows).

    Builds the reverse pair graph on the fly and BFSes backward from pairs
    that merge in one step. Hot path: called once per candidate coloring
    during a census.
    """
    npairs = n * (n - 1) // 2
    if npairs == 0:
        return True
    rev = [None] * npairs
    mark = bytearray(npairs)
    stack = []
    nmarked = 0
    for p in range(n - 1):
        dp = rows[p]
        tp = tri[p]
        for q in range(p + 1, n):
            dq = rows[q]
            pid = tp + q
            seed = False
            for a in range(k):
                if dp[a] == dq[a]:
                    seed = True
                    break
            if seed:
                mark[pid] = 1
                stack.append(pid)
                nmarked += 1
            else:
                for a in range(k):
                    r = dp[a]
                    s = dq[a]
                    sid = (tri[r] + s) if r < s else (tri[s] + r)
                    lst = rev[sid]
                    if lst is None:
                        rev[sid] = [pid]
                    else:
                        lst.append(pid)
    if nmarked == 0:
        return False
    while stack:
        lst = rev[stack.pop()]
        if lst:
            for y in lst:
                if not mark[y]:
                    mark[y] = 1
                    nmarked += 1
                    stack.append(y)
    return nmarked == npairs


def is_synchronizing(a: Automaton) -> bool:
    """True iff some word maps all states to a single state."""
    return _sync_rows(a.delta, a.n, a.k, _tri_base(a.n))


def shortest_reset_word(a: Automaton):
    """A shortest reset word as a tuple of colors, or None when the
    automaton is not synchronizing.

    Exact oracle: BFS over images of the full state set, so it is
    restricted to n <= 20. Ties between equally short words are broken
    toward the lowest color index, making the result deterministic.
    """
    n, k = a.n, a.k
    if n > MAX_ORACLE_N:
        raise ValueError(f"subset oracle supports n <= {MAX_ORACLE_N}, got n={n}")
    full = (1 << n) - 1
    singletons = {1 << q for q in range(n)}
    if full in singletons:
        return ()
    bit = [[1 << a.delta[v][c] for v in range(n)] for c in range(k)]
    parent = {full: None}
    queue = deque([full])
    while queue:
        mask = queue.popleft()
        for c in range(k):
            bc = bit[c]
            img = 0
            m = mask
            while m:
                low = m & (-m)
                img |= bc[low.bit_length() - 1]
                m ^= low
            if img not in parent:
                parent[img] = (mask, c)
                if img in singletons:
                    word = []
                    cur = img
                    while parent[cur] is not None:
                        cur, cc = parent[cur]
                        word.append(cc)
                    word.reverse()
                    return tuple(word)
                queue.append(img)
    return None


def reset_threshold(a: Automaton):
    """Length of the shortest reset word, or None if not synchronizing."""
    w = shortest_reset_word(a)
    return None if w is None else len(w)


def apply_word(a: Automaton, states, word):
    """Image of a set of states under a word, as a frozenset."""
    cur = set(states)
    for c in word:
        cur = {a.delta[q][c] for q in cur}
    return frozenset(cur)
