"""Finite simple graphs, graph maps and vertex signals.

Vertices are dense integers ``0 .. n-1``.  Edges are stored as sorted
``(min, max)`` pairs in sorted order, so every iteration below is
deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np


class GraphError(ValueError):
    """Raised for malformed graphs, maps or signals."""


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on ``n`` vertices."""

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {self.n}")
        canon = set()
        for e in self.edges:
            i, j = (int(e[0]), int(e[1]))
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise GraphError(f"edge {(i, j)} out of range for n={self.n}")
            edge = (min(i, j), max(i, j))
            if edge in canon:
                raise GraphError(f"duplicate edge {edge}")
            canon.add(edge)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @property
    def vertex_count(self) -> int:
        return self.n

    @cached_property
    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int8)
        if self.edges:
            e = np.asarray(self.edges)
            a[e[:, 0], e[:, 1]] = 1
            a[e[:, 1], e[:, 0]] = 1
        a.flags.writeable = False
        return a

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            nbrs[i].append(j)
            nbrs[j].append(i)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edge_set

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def bfs_distances(self, source: int) -> np.ndarray:
        """Hop distances from ``source``; unreachable vertices get -1."""
        dist = np.full(self.n, -1, dtype=int)
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self.neighbors[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def ball(self, center: int, radius: int) -> tuple[int, ...]:
        dist = self.bfs_distances(center)
        return tuple(int(v) for v in np.flatnonzero((dist >= 0) & (dist <= radius)))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return bool(np.all(self.bfs_distances(0) >= 0))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs at least 3 vertices, got {n}")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    """Path on ``n`` vertices (``n - 1`` edges).

    "Path of length k" throughout this package counts vertices, so that a
    27-cycle times a path of length 7 has 189 vertices.
    """
    if n < 1:
        raise GraphError(f"path needs at least 1 vertex, got {n}")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def chorded_cycle_graph(n: int, a: int = 0, b: int | None = None) -> Graph:
    """Cycle on ``n`` vertices with one extra chord ``(a, b)``.

    The default chord joins vertex 0 to vertex ``n // 2 - 1``; for ``n = 27``
    that is the first and thirteenth vertices, giving two loops that share
    the chord.
    """
    if b is None:
        b = n // 2 - 1
    c = cycle_graph(n)
    if c.has_edge(a, b):
        raise GraphError(f"chord {(a, b)} already an edge of the cycle")
    return Graph(n, c.edges + ((a, b),))


@dataclass(frozen=True, eq=False)
class GraphMap:
    """Vertex map ``source -> target`` that sends edges to edges or vertices."""

    source: Graph
    target: Graph
    vertex_map: np.ndarray

    def __post_init__(self):
        vm = np.asarray(self.vertex_map, dtype=int).copy()
        if vm.shape != (self.source.n,):
            raise GraphError(
                f"vertex map has shape {vm.shape}, expected ({self.source.n},)"
            )
        if vm.size and (vm.min() < 0 or vm.max() >= self.target.n):
            raise GraphError("vertex map leaves the target vertex range")
        vm.flags.writeable = False
        object.__setattr__(self, "vertex_map", vm)
        for i, j in self.source.edges:
            a, b = vm[i], vm[j]
            if a != b and not self.target.has_edge(a, b):
                raise GraphError(
                    f"edge {(i, j)} maps to non-edge {(int(a), int(b))}"
                )

    def __call__(self, v: int) -> int:
        return int(self.vertex_map[v])

    def is_injective(self) -> bool:
        return len(np.unique(self.vertex_map)) == self.source.n

    def is_surjective(self) -> bool:
        return len(np.unique(self.vertex_map)) == self.target.n

    def compose(self, inner: "GraphMap") -> "GraphMap":
        """``self o inner``."""
        if inner.target != self.source:
            raise GraphError("cannot compose maps with mismatched graphs")
        return GraphMap(inner.source, self.target, self.vertex_map[inner.vertex_map])


def is_local_isomorphism(m: GraphMap) -> bool:
    """Injective, and ``(m(i), m(j))`` is an edge iff ``(i, j)`` is."""
    if not m.is_injective():
        return False
    vm = m.vertex_map
    return bool(np.array_equal(m.target.adjacency[np.ix_(vm, vm)], m.source.adjacency))


class LocalIsomorphism(GraphMap):
    """A :class:`GraphMap` verified to be a local isomorphism on construction."""

    def __post_init__(self):
        super().__post_init__()
        if not is_local_isomorphism(self):
            raise GraphError("map is not a local isomorphism")

    @cached_property
    def inverse(self) -> np.ndarray:
        """Target vertex -> source vertex, ``-1`` off the image."""
        inv = np.full(self.target.n, -1, dtype=int)
        inv[self.vertex_map] = np.arange(self.source.n)
        return inv

    @property
    def image(self) -> np.ndarray:
        return np.sort(self.vertex_map)


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, LocalIsomorphism]:
    """Subgraph induced on ``s`` (local order = sorted ``s``) and its embedding."""
    verts = sorted(set(int(v) for v in s))
    if verts and (verts[0] < 0 or verts[-1] >= g.n):
        raise GraphError(f"vertex set {verts} out of range for n={g.n}")
    local = {v: k for k, v in enumerate(verts)}
    edges = tuple(
        (local[i], local[j]) for i, j in g.edges if i in local and j in local
    )
    sub = Graph(len(verts), edges)
    return sub, LocalIsomorphism(sub, g, np.array(verts, dtype=int))


def neighborhood_star(g: Graph, v: int) -> tuple[Graph, GraphMap]:
    """Star centred at ``v``: ``v`` plus neighbours, only the spokes as edges.

    Local vertex order is sorted global order, as in :func:`induced_subgraph`.
    The returned embedding is a plain graph map; it is a local isomorphism
    exactly when the neighbourhood of ``v`` is an independent set.
    """
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")
    verts = sorted((v,) + g.neighbors[v])
    local = {u: k for k, u in enumerate(verts)}
    c = local[v]
    star = Graph(len(verts), tuple((c, local[u]) for u in g.neighbors[v]))
    return star, GraphMap(star, g, np.array(verts, dtype=int))


@dataclass(frozen=True)
class ProductIndexing:
    """Row-major bijection ``V(B x F) <-> V(B) x V(F)``."""

    base: Graph
    fiber: Graph

    @property
    def n(self) -> int:
        return self.base.n * self.fiber.n

    def index(self, b, f):
        return np.asarray(b) * self.fiber.n + np.asarray(f)

    def pair(self, v):
        return np.divmod(np.asarray(v), self.fiber.n)

    def base_of(self, v):
        return np.asarray(v) // self.fiber.n

    def fiber_of(self, v):
        return np.asarray(v) % self.fiber.n

    def fiber_vertices(self, b: int) -> np.ndarray:
        return b * self.fiber.n + np.arange(self.fiber.n)


def cartesian_product(b: Graph, f: Graph) -> tuple[Graph, ProductIndexing]:
    idx = ProductIndexing(b, f)
    edges = []
    for u in range(b.n):
        for i, j in f.edges:
            edges.append((idx.index(u, i), idx.index(u, j)))
    for u, v in b.edges:
        for i in range(f.n):
            edges.append((idx.index(u, i), idx.index(v, i)))
    g = Graph(idx.n, tuple((int(x), int(y)) for x, y in edges))
    return g, idx


def product_projection(g: Graph, idx: ProductIndexing) -> GraphMap:
    """First-factor projection ``B x F -> B``."""
    return GraphMap(g, idx.base, idx.base_of(np.arange(g.n)))


# -- signals ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Signal:
    """Real function on the vertices of ``graph``."""

    graph: Graph
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.shape != (self.graph.n,):
            raise GraphError(
                f"signal has shape {vals.shape}, expected ({self.graph.n},)"
            )
        if not np.all(np.isfinite(vals)):
            raise GraphError("signal values must be finite")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def inner(self, other: "Signal") -> float:
        _same_graph(self, other)
        return float(self.values @ other.values)

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    @classmethod
    def constant(cls, g: Graph, c: float) -> "Signal":
        return cls(g, np.full(g.n, float(c)))

    @classmethod
    def impulse(cls, g: Graph, v: int) -> "Signal":
        x = np.zeros(g.n)
        x[v] = 1.0
        return cls(g, x)


def _same_graph(x: Signal, y: Signal) -> None:
    if x.graph != y.graph:
        raise GraphError("signals live on different graphs")


def signal_values(x, g: Graph) -> np.ndarray:
    """Values of ``x`` (a Signal or array) checked against graph ``g``."""
    if isinstance(x, Signal):
        if x.graph != g:
            raise GraphError("signal lives on a different graph")
        return x.values
    vals = np.asarray(x, dtype=float)
    if vals.shape[:1] != (g.n,):
        raise GraphError(f"signal has shape {vals.shape}, expected ({g.n}, ...)")
    return vals


def pullback(m: GraphMap, x: Signal) -> Signal:
    """``x o m`` as a signal on ``m.source``."""
    return Signal(m.source, signal_values(x, m.target)[m.vertex_map])


def pushforward(m: LocalIsomorphism, x: Signal) -> Signal:
    """``x o m^{-1}`` on the image of ``m``, zero elsewhere."""
    if not isinstance(m, LocalIsomorphism):
        if not m.is_injective():
            raise GraphError("pushforward needs an injective map")
    out = np.zeros(m.target.n)
    out[m.vertex_map] = signal_values(x, m.source)
    return Signal(m.target, out)


def restrict_to_image(m: GraphMap, y: Signal) -> Signal:
    """Adjoint of :func:`pushforward`: pull ``y`` back along ``m``.

    For injective ``m`` this simply reads off ``y`` on the image, so
    ``<pushforward(m, x), y> == <x, restrict_to_image(m, y)>``.
    """
    return pullback(m, y)


def pointwise_mul(x: Signal, y: Signal) -> Signal:
    _same_graph(x, y)
    return Signal(x.graph, x.values * y.values)


def pointwise_sqrt(x: Signal) -> Signal:
    if np.any(x.values < 0):
        raise GraphError("square root of a signal with negative values")
    return Signal(x.graph, np.sqrt(x.values))
