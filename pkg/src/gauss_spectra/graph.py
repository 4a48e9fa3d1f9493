"""Linearly ordered graphs and their skew-adjacency matrices.

Edges are stored undirected as ``(u, v)`` with ``u < v``; the direction
``u -> v`` always follows from the labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .diagram import ChordDiagram
from .errors import EdgeExists, MalformedGraph, OutOfRange

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class LinearlyOrderedGraph:
    n: int
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise MalformedGraph(f"loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise OutOfRange(f"edge {(u, v)} outside vertices 1..{self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbors(self, v: int) -> set[int]:
        return {b if a == v else a for a, b in self.edges if v in (a, b)}

    def __str__(self) -> str:
        return serialize_graph(self)


def serialize_graph(g: LinearlyOrderedGraph) -> str:
    lines = [str(g.n)] + [f"{u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines)


def parse_graph(text: str) -> LinearlyOrderedGraph:
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 1:
        raise MalformedGraph("first line must hold the vertex count")
    try:
        n = int(lines[0][0])
        edges = [(int(a), int(b)) for a, b in lines[1:]]
    except ValueError as exc:
        raise MalformedGraph(str(exc)) from None
    if len(set((min(e), max(e)) for e in edges)) != len(edges):
        raise MalformedGraph("repeated edge")
    return LinearlyOrderedGraph(n, frozenset(edges))


def _check_vertex(g: LinearlyOrderedGraph, v: int) -> None:
    if not 1 <= v <= g.n:
        raise OutOfRange(f"vertex {v} not in 1..{g.n}")


def interlacement_graph(d: ChordDiagram) -> LinearlyOrderedGraph:
    """Chords i, j are adjacent iff exactly one endpoint of j lies between the endpoints of i."""
    ends = sorted(d.endpoints().items())
    edges = []
    for idx, (i, (ai, bi)) in enumerate(ends):
        for j, (aj, bj) in ends[idx + 1:]:
            if (ai < aj < bi) != (ai < bj < bi):
                edges.append((i, j))
    return LinearlyOrderedGraph(d.n, frozenset(edges))


def skew_adjacency(g: LinearlyOrderedGraph) -> Matrix:
    m = [[0] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        m[u - 1][v - 1] = 1
        m[v - 1][u - 1] = -1
    return tuple(tuple(row) for row in m)


def adjacency(g: LinearlyOrderedGraph) -> Matrix:
    """Symmetric 0/1 adjacency matrix (the unordered intersection graph)."""
    m = [[0] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        m[u - 1][v - 1] = m[v - 1][u - 1] = 1
    return tuple(tuple(row) for row in m)


def is_skew(m: Matrix) -> bool:
    """Entries in {-1,0,1}, skew-symmetric, and non-negative above the diagonal."""
    n = len(m)
    for i in range(n):
        if len(m[i]) != n or m[i][i] != 0:
            return False
        for j in range(i + 1, n):
            if m[i][j] not in (0, 1) or m[j][i] != -m[i][j]:
                return False
    return True


def relabel(g: LinearlyOrderedGraph, perm: Mapping[int, int]) -> LinearlyOrderedGraph:
    """Apply a vertex bijection ``perm`` (old label -> new label)."""
    return LinearlyOrderedGraph(g.n, frozenset((perm[u], perm[v]) for u, v in g.edges))


def empty_graph(n: int) -> LinearlyOrderedGraph:
    return LinearlyOrderedGraph(n)


def complete_graph(n: int) -> LinearlyOrderedGraph:
    return LinearlyOrderedGraph(n, frozenset((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)))


def path_graph(n: int) -> LinearlyOrderedGraph:
    return LinearlyOrderedGraph(n, frozenset((k, k + 1) for k in range(1, n)))


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> LinearlyOrderedGraph:
    return LinearlyOrderedGraph(n, frozenset(edges))


def delete_vertex(g: LinearlyOrderedGraph, v: int) -> LinearlyOrderedGraph:
    """Remove ``v``; labels above it shift down by one."""
    _check_vertex(g, v)

    def shift(w):
        return w - 1 if w > v else w

    return LinearlyOrderedGraph(
        g.n - 1, frozenset((shift(a), shift(b)) for a, b in g.edges if v not in (a, b))
    )


def add_edge(g: LinearlyOrderedGraph, u: int, v: int) -> LinearlyOrderedGraph:
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        raise MalformedGraph("cannot add a loop")
    if g.adjacent(u, v):
        raise EdgeExists(f"{u} and {v} are already adjacent")
    return LinearlyOrderedGraph(g.n, g.edges | {(min(u, v), max(u, v))})


def remove_edge(g: LinearlyOrderedGraph, u: int, v: int) -> LinearlyOrderedGraph:
    _check_vertex(g, u)
    _check_vertex(g, v)
    e = (min(u, v), max(u, v))
    if e not in g.edges:
        raise MalformedGraph(f"no edge between {u} and {v}")
    return LinearlyOrderedGraph(g.n, g.edges - {e})


def disjoint_union(g1: LinearlyOrderedGraph, g2: LinearlyOrderedGraph) -> LinearlyOrderedGraph:
    """``g2``'s labels are shifted up by ``g1.n``."""
    k = g1.n
    return LinearlyOrderedGraph(g1.n + g2.n, g1.edges | {(a + k, b + k) for a, b in g2.edges})


def join(g1: LinearlyOrderedGraph, g2: LinearlyOrderedGraph) -> LinearlyOrderedGraph:
    """Disjoint union plus every edge between a ``g1`` vertex and a ``g2`` vertex."""
    base = disjoint_union(g1, g2)
    cross = {(a, b + g1.n) for a in range(1, g1.n + 1) for b in range(1, g2.n + 1)}
    return LinearlyOrderedGraph(base.n, base.edges | cross)


def coalesce(g1: LinearlyOrderedGraph, u: int, g2: LinearlyOrderedGraph, v: int) -> LinearlyOrderedGraph:
    """Identify ``u`` in ``g1`` with ``v`` in ``g2``.

    ``g1`` keeps its labels (the merged vertex is ``u``); a vertex w of
    ``g2 - v`` gets its label in ``g2 - v`` plus ``g1.n``.
    """
    _check_vertex(g1, u)
    _check_vertex(g2, v)
    k = g1.n

    def move(w):
        if w == v:
            return u
        return (w - 1 if w > v else w) + k

    return LinearlyOrderedGraph(
        g1.n + g2.n - 1, g1.edges | {(move(a), move(b)) for a, b in g2.edges}
    )


def promote(g: LinearlyOrderedGraph, u: int) -> LinearlyOrderedGraph:
    """Move ``u`` to label 1, shifting the labels below it up by one."""
    _check_vertex(g, u)

    def move(w):
        if w == u:
            return 1
        return w + 1 if w < u else w

    return LinearlyOrderedGraph(g.n, frozenset((move(a), move(b)) for a, b in g.edges))
