"""Core data model: k-out-regular multidigraphs and their colorings (automata).

A digraph here is a directed multigraph with loops in which every vertex has
exactly k outgoing edges. Edges carry no identity beyond their destination:
each vertex stores the sorted multiset of its k destinations. A coloring
assigns the k colors to a vertex's outgoing edges bijectively, which yields a
complete deterministic transition table (an automaton). Colorings that agree
on every transition collapse to the same automaton; the number of
edge-labeled colorings behind one automaton is the weight handled in the
census module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

# Enforced size limits. Exact counts such as (k!)^n stay comfortably exact in
# Python integers, but every search and table in this package is sized and
# tested for desk scale only.
MAX_N = 15
MAX_K = 6


class ParseError(ValueError):
    """Malformed digraph text; carries 1-based line and column."""

    def __init__(self, message, line, col):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Digraph:
    """k-out-regular multidigraph on vertices 0..n-1.

    dests[v] is the non-decreasing tuple of the k destinations of v's
    outgoing edges (loops allowed, parallel edges appear repeated).
    Instances are immutable; use validate() to check invariants.
    """

    n: int
    k: int
    dests: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Automaton:
    """Complete deterministic transition table over k colors.

    delta[v][a] is the state reached from v by color a. When the automaton
    is a coloring of a digraph d, the multiset {delta[v][a]} equals
    d.dests[v] for every v.
    """

    n: int
    k: int
    delta: tuple[tuple[int, ...], ...]


def digraph_from_lists(n, k, dests):
    """Build a Digraph from nested lists, sorting each destination row."""
    return Digraph(n, k, tuple(tuple(sorted(row)) for row in dests))


def validate(d: Digraph):
    """Return None if all Digraph invariants hold, else a message naming
    the first violated invariant."""
    if not isinstance(d.n, int) or d.n < 1:
        return "n must be a positive integer"
    if not isinstance(d.k, int) or d.k < 1:
        return "k must be a positive integer"
    if d.n > MAX_N:
        return f"n={d.n} exceeds the supported limit {MAX_N}"
    if d.k > MAX_K:
        return f"k={d.k} exceeds the supported limit {MAX_K}"
    if len(d.dests) != d.n:
        return f"expected {d.n} destination rows, found {len(d.dests)}"
    for v, row in enumerate(d.dests):
        if len(row) != d.k:
            return f"vertex {v} has {len(row)} outgoing edges, expected {d.k}"
        for x in row:
            if not isinstance(x, int) or not 0 <= x < d.n:
                return f"vertex {v} has destination {x} out of range [0, {d.n})"
        if any(row[i] > row[i + 1] for i in range(d.k - 1)):
            return f"vertex {v} destinations are not sorted non-decreasing"
    return None


def validate_automaton(a: Automaton):
    """Return None if the transition table is total and in range, else a
    message for the first violation."""
    if not isinstance(a.n, int) or a.n < 1:
        return "n must be a positive integer"
    if not isinstance(a.k, int) or a.k < 1:
        return "k must be a positive integer"
    if len(a.delta) != a.n:
        return f"expected {a.n} transition rows, found {len(a.delta)}"
    for v, row in enumerate(a.delta):
        if len(row) != a.k:
            return f"state {v} has {len(row)} transitions, expected {a.k}"
        for x in row:
            if not isinstance(x, int) or not 0 <= x < a.n:
                return f"state {v} has transition target {x} out of range [0, {a.n})"
    return None


def multiplicity_profile(d: Digraph):
    """Per-vertex tuple of (destination, multiplicity) pairs.

    Destinations are strictly increasing and multiplicities sum to k.
    """
    prof = []
    for row in d.dests:
        pairs = []
        i = 0
        while i < len(row):
            j = i
            while j < len(row) and row[j] == row[i]:
                j += 1
            pairs.append((row[i], j - i))
            i = j
        prof.append(tuple(pairs))
    return tuple(prof)


def digraph_of_automaton(a: Automaton) -> Digraph:
    """Underlying digraph of a coloring: forget colors, sort each row."""
    return Digraph(a.n, a.k, tuple(tuple(sorted(row)) for row in a.delta))


def parse_digraph(text: str) -> Digraph:
    """Parse the plain text format.

    First data line is "n k"; then n lines, each with k space-separated
    1-indexed destinations in non-decreasing order. '#' starts a comment,
    blank lines are ignored. Raises ParseError with line/column on
    malformed input.
    """
    data_lines = []  # (line_number, stripped_content, original_line)
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            data_lines.append((ln, body, raw))
    if not data_lines:
        raise ParseError("empty input, expected header 'n k'", 1, 1)

    def ints_of(entry, expected, what):
        ln, body, raw = entry
        toks = body.split()
        if len(toks) != expected:
            raise ParseError(
                f"expected {expected} {what}, found {len(toks)}", ln, 1
            )
        out = []
        cols = []
        pos = 0
        for t in toks:
            col = raw.index(t, pos) + 1
            pos = col - 1 + len(t)
            cols.append(col)
            try:
                out.append(int(t))
            except ValueError:
                raise ParseError(f"invalid integer {t!r}", ln, col) from None
        return out, cols

    (n, k), _ = ints_of(data_lines[0], 2, "header fields 'n k'")
    hln = data_lines[0][0]
    if n < 1 or k < 1:
        raise ParseError(f"n and k must be positive, got n={n} k={k}", hln, 1)
    if n > MAX_N or k > MAX_K:
        raise ParseError(
            f"n={n}, k={k} outside supported limits n<={MAX_N}, k<={MAX_K}", hln, 1
        )
    body_lines = data_lines[1:]
    if len(body_lines) < n:
        last_ln = data_lines[-1][0]
        raise ParseError(
            f"expected {n} destination lines, found {len(body_lines)}", last_ln, 1
        )
    if len(body_lines) > n:
        extra = body_lines[n]
        raise ParseError("unexpected extra line after destination rows", extra[0], 1)

    rows = []
    for v, entry in enumerate(body_lines):
        ln = entry[0]
        vals, cols = ints_of(entry, k, "destinations")
        row = []
        prev = 0
        for t, x in enumerate(vals):
            if not 1 <= x <= n:
                raise ParseError(
                    f"destination {x} out of range [1, {n}]", ln, cols[t]
                )
            if x < prev:
                raise ParseError(
                    "destinations must be non-decreasing", ln, cols[t]
                )
            prev = x
            row.append(x - 1)
        rows.append(tuple(row))
    return Digraph(n, k, tuple(rows))


def format_digraph(d: Digraph) -> str:
    """Canonical text rendering: header plus 1-indexed sorted rows."""
    lines = [f"{d.n} {d.k}"]
    for row in d.dests:
        lines.append(" ".join(str(x + 1) for x in sorted(row)))
    return "\n".join(lines) + "\n"


def digraph_to_json(d: Digraph) -> str:
    """One-line JSON object (JSONL variant, 0-indexed destinations)."""
    return json.dumps(
        {"n": d.n, "k": d.k, "dests": [list(row) for row in d.dests]},
        separators=(",", ":"),
    )


def digraph_from_json(line: str) -> Digraph:
    obj = json.loads(line)
    d = digraph_from_lists(obj["n"], obj["k"], obj["dests"])
    msg = validate(d)
    if msg is not None:
        raise ValueError(f"invalid digraph in JSON record: {msg}")
    return d
