"""Parametric digraph families with known exact synchronizing ratios.

Each constructor returns a plain Digraph; expected_ratio gives the closed
form the census must reproduce, which the CLI --self-check and the test
suite verify. Family ids match the CLI: cerny, g30, gnk, hdnk.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .digraph import Digraph, digraph_from_lists

FAMILIES = ("cerny", "g30", "gnk", "hdnk")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int | None = None
    k: int | None = None
    d: int | None = None


def cerny_digraph(n: int) -> Digraph:
    """Underlying digraph of the classical Cerny automaton on n states.

    Vertex i < n-1 has destinations {i, i+1} (a loop and a step); vertex
    n-1 sends both edges to 0. Every coloring of it synchronizes.
    """
    if n < 2:
        raise ValueError(f"cerny requires n >= 2, got n={n}")
    rows = [[i, i + 1] for i in range(n - 1)]
    rows.append([0, 0])
    return digraph_from_lists(n, 2, rows)


def g30() -> Digraph:
    """The exceptional 6-vertex, 2-out-regular digraph whose synchronizing
    ratio is 30/64, below the (k-1)/k floor seen everywhere else."""
    return digraph_from_lists(
        6, 2, [[2, 5], [2, 5], [1, 4], [1, 4], [0, 3], [0, 3]]
    )


def gnk(n: int, k: int) -> Digraph:
    """Family with synchronizing ratio (k-1)/k.

    Edges (0,1) and (1,2) have multiplicity 1, the loop (1,1) and the edge
    (0,2) have multiplicity k-1, and the cycle edges (2,3), ..., (n-1,0)
    have multiplicity k. A coloring synchronizes exactly when the colors of
    (0,1) and (1,2) differ.
    """
    if n <= 3:
        raise ValueError(f"gnk requires n > 3, got n={n}")
    if k < 2:
        raise ValueError(f"gnk requires k >= 2, got k={k}")
    rows = [[1] + [2] * (k - 1), [1] * (k - 1) + [2]]
    for i in range(2, n):
        rows.append([(i + 1) % n] * k)
    return digraph_from_lists(n, k, rows)


def hdnk(d: int, n: int, k: int) -> Digraph:
    """Family with synchronizing ratio 1 - 1/k^d.

    A chain of d gadgets sits on vertices 0..2d: for each i < d, vertex 2i
    has k-1 edges to 2i+1 plus one edge to 2i+2, and vertex 2i+1 has k-1
    edges to 2i+2 plus a loop. Vertices 2d..n-1 carry the full-multiplicity
    cycle edges (i, i+1 mod n), closing back to 0. A coloring fails to
    synchronize exactly when, for every i, the color of (2i, 2i+2) matches
    the color of the loop at 2i+1.
    """
    if d < 1:
        raise ValueError(f"hdnk requires d >= 1, got d={d}")
    if k < 2:
        raise ValueError(f"hdnk requires k >= 2, got k={k}")
    if n < 3 * d:
        raise ValueError(f"hdnk requires n >= 3d = {3 * d}, got n={n}")
    rows = []
    for i in range(2 * d):
        if i % 2 == 0:
            rows.append([i + 1] * (k - 1) + [i + 2])
        else:
            rows.append([i] + [i + 1] * (k - 1))
    for i in range(2 * d, n):
        rows.append([(i + 1) % n] * k)
    return digraph_from_lists(n, k, rows)


def build_family(spec: FamilySpec) -> Digraph:
    if spec.family == "cerny":
        if spec.n is None:
            raise ValueError("cerny requires n")
        return cerny_digraph(spec.n)
    if spec.family == "g30":
        return g30()
    if spec.family == "gnk":
        if spec.n is None or spec.k is None:
            raise ValueError("gnk requires n and k")
        return gnk(spec.n, spec.k)
    if spec.family == "hdnk":
        if spec.d is None or spec.n is None or spec.k is None:
            raise ValueError("hdnk requires d, n and k")
        return hdnk(spec.d, spec.n, spec.k)
    raise ValueError(f"unknown family {spec.family!r}")


def expected_ratio(spec: FamilySpec) -> Fraction:
    """Closed-form synchronizing ratio of a family instance."""
    if spec.family == "cerny":
        return Fraction(1)
    if spec.family == "g30":
        return Fraction(30, 64)
    if spec.family == "gnk":
        return Fraction(spec.k - 1, spec.k)
    if spec.family == "hdnk":
        return 1 - Fraction(1, spec.k ** spec.d)
    raise ValueError(f"unknown family {spec.family!r}")
