"""Oriented graphs and their skew-symmetric adjacency matrices.

An oriented graph assigns a direction to every edge of a simple graph.
Its adjacency matrix A has A[u][v] = +1 when the edge runs u -> v,
A[v][u] = -1, and 0 elsewhere, so A is skew-symmetric with entries in
{-1, 0, +1} and zero diagonal.

Graph file grammar (one directive per line, ``#`` starts a comment):

    n <vertex-count>
    e <tail> <head>

The ``n`` line must come before any ``e`` line.  Serialization emits the
edge list sorted lexicographically by (tail, head).
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DuplicateEdgeError,
    GraphParseError,
    SelfLoopError,
    UnknownExampleError,
    VertexOutOfRangeError,
)

__all__ = [
    "OrientedGraph",
    "build_graph",
    "is_connected",
    "parse_graph",
    "serialize_graph",
    "builtin_example",
    "BUILTIN_NAMES",
]


class OrientedGraph:
    """Immutable oriented graph on vertices 0..n-1.

    Attributes
    ----------
    n : int
        Number of vertices.
    edges : tuple of (int, int)
        Oriented edges (tail, head), stored sorted lexicographically.
    """

    __slots__ = ("n", "edges", "_adjacency")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise VertexOutOfRangeError(f"vertex count must be nonnegative, got {n}")
        seen: set[frozenset[int]] = set()
        checked: list[tuple[int, int]] = []
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRangeError(
                    f"edge ({u}, {v}) leaves the vertex range [0, {n})"
                )
            if u == v:
                raise SelfLoopError(f"edge ({u}, {v}) is a self loop")
            key = frozenset((u, v))
            if key in seen:
                raise DuplicateEdgeError(
                    f"vertex pair {{{min(u, v)}, {max(u, v)}}} appears more than once"
                )
            seen.add(key)
            checked.append((u, v))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(sorted(checked)))
        a = np.zeros((n, n), dtype=np.int64)
        for u, v in checked:
            a[u, v] = 1
            a[v, u] = -1
        a.setflags(write=False)
        object.__setattr__(self, "_adjacency", a)

    def __setattr__(self, name, value):
        raise AttributeError("OrientedGraph is immutable")

    @property
    def adjacency(self) -> np.ndarray:
        """Read-only skew-symmetric adjacency matrix with entries in {-1, 0, 1}."""
        return self._adjacency

    def degree(self, v: int) -> int:
        """Degree of ``v`` in the underlying undirected graph."""
        return int(np.count_nonzero(self._adjacency[v]))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OrientedGraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"OrientedGraph(n={self.n}, edges={list(self.edges)})"


def build_graph(n: int, edges: Sequence[tuple[int, int]]) -> OrientedGraph:
    """Validate and build an oriented graph from an edge list."""
    return OrientedGraph(n, edges)


def is_connected(g: OrientedGraph) -> bool:
    """True when the underlying undirected graph is connected.

    Vacuously true for graphs with at most one vertex.
    """
    if g.n <= 1:
        return True
    neighbors: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in g.edges:
        neighbors[u].append(v)
        neighbors[v].append(u)
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in neighbors[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == g.n


def parse_graph(text: str) -> OrientedGraph:
    """Parse graph file text into an :class:`OrientedGraph`."""
    n: int | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "n":
            if n is not None:
                raise GraphParseError(f"line {lineno}: repeated n directive")
            if len(fields) != 2:
                raise GraphParseError(f"line {lineno}: expected 'n <count>'")
            try:
                n = int(fields[1])
            except ValueError:
                raise GraphParseError(
                    f"line {lineno}: vertex count {fields[1]!r} is not an integer"
                ) from None
            if n < 0:
                raise GraphParseError(f"line {lineno}: negative vertex count")
        elif fields[0] == "e":
            if n is None:
                raise GraphParseError(f"line {lineno}: e directive before n")
            if len(fields) != 3:
                raise GraphParseError(f"line {lineno}: expected 'e <tail> <head>'")
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise GraphParseError(
                    f"line {lineno}: edge endpoints must be integers"
                ) from None
            edges.append((u, v))
        else:
            raise GraphParseError(
                f"line {lineno}: unknown directive {fields[0]!r}"
            )
    if n is None:
        raise GraphParseError("missing n directive")
    return OrientedGraph(n, edges)


def serialize_graph(g: OrientedGraph) -> str:
    """Render a graph as file text with edges sorted by (tail, head)."""
    lines = [f"n {g.n}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def _mst8_edges() -> list[tuple[int, int]]:
    edges = [(x, y) for x in (0, 1, 6, 7) for y in (2, 3, 4, 5)]
    edges += [(6, 0), (0, 7), (7, 1), (1, 6)]
    edges += [(4, 2), (2, 5), (5, 3), (3, 4)]
    return edges


_BUILTINS: dict[str, tuple[int, list[tuple[int, int]]]] = {
    "k3": (3, [(0, 1), (1, 2), (2, 0)]),
    "irrational5": (5, [(0, 3), (0, 4), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]),
    "mst8": (8, _mst8_edges()),
}

BUILTIN_NAMES = tuple(sorted(_BUILTINS))


def builtin_example(name: str) -> OrientedGraph:
    """Return a named builtin example graph.

    Available names: ``k3`` (cyclically oriented triangle), ``irrational5``
    (five vertices, seven edges, irrational transfer time), ``mst8``
    (eight vertices, 24 edges, four-vertex multiple state transfer).
    """
    try:
        n, edges = _BUILTINS[name]
    except KeyError:
        raise UnknownExampleError(
            f"unknown example {name!r}; available: {', '.join(BUILTIN_NAMES)}"
        ) from None
    return OrientedGraph(n, edges)
