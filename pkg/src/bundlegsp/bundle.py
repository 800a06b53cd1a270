"""Graph bundles built from voltage assignments, covers and partitions of unity.

A bundle with base ``B`` and fiber ``F`` is generated by attaching to each
oriented base edge ``u -> v`` an automorphism ``sigma_uv`` of ``F``.  The
total graph has vertex ``(v, i)`` for every base vertex ``v`` and fiber vertex
``i`` (row-major), a copy of ``F`` over each base vertex, and cross edges
``(u, i) -- (v, sigma_uv(i))``.  Identity voltages give the Cartesian product;
a nonidentity composed voltage around a base cycle is a twist.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .graphs import (
    Graph,
    GraphError,
    GraphMap,
    LocalIsomorphism,
    ProductIndexing,
    cartesian_product,
    chorded_cycle_graph,
    cycle_graph,
    induced_subgraph,
    is_local_isomorphism,
    neighborhood_star,
    path_graph,
)


class BundleError(GraphError):
    pass


class NonTrivializable(BundleError):
    """A cover set carries a twist, so no product chart exists over it."""


class NotACover(BundleError):
    """The proposed sets do not cover every vertex and edge of the base."""


# -- isomorphism helpers (fibers are small) --------------------------------


def is_automorphism(g: Graph, perm: Sequence[int]) -> bool:
    p = np.asarray(perm, dtype=int)
    if sorted(p.tolist()) != list(range(g.n)):
        return False
    return bool(np.array_equal(g.adjacency[np.ix_(p, p)], g.adjacency))


def automorphisms(g: Graph) -> list[np.ndarray]:
    """All automorphisms of ``g`` by exhaustive search (small graphs only)."""
    return [np.array(p) for p in permutations(range(g.n)) if is_automorphism(g, p)]


def find_isomorphism(g: Graph, h: Graph) -> np.ndarray | None:
    """A vertex map ``m`` with ``h.adjacency[m][:, m] == g.adjacency``, or None.

    Plain backtracking with degree pruning; fine for fibers of a few dozen
    vertices.
    """
    if g.n != h.n or len(g.edges) != len(h.edges):
        return None
    dg = g.adjacency.sum(1)
    dh = h.adjacency.sum(1)
    if sorted(dg) != sorted(dh):
        return None
    order = sorted(range(g.n), key=lambda v: (-dg[v], v))
    ag, ah = g.adjacency, h.adjacency
    m = np.full(g.n, -1, dtype=int)
    used = np.zeros(h.n, dtype=bool)

    def extend(k: int) -> bool:
        if k == g.n:
            return True
        v = order[k]
        done = order[:k]
        for w in range(h.n):
            if used[w] or dh[w] != dg[v]:
                continue
            if any(ag[v, u] != ah[w, m[u]] for u in done):
                continue
            m[v] = w
            used[w] = True
            if extend(k + 1):
                return True
            used[w] = False
            m[v] = -1
        return False

    return m.copy() if extend(0) else None


# -- voltages and bundles --------------------------------------------------


@dataclass(frozen=True, eq=False)
class VoltageAssignment:
    """Fiber automorphism per oriented base edge; ``sigma_vu = sigma_uv^-1``."""

    base: Graph
    fiber: Graph
    table: Mapping[tuple[int, int], np.ndarray] = field(repr=False)

    def __post_init__(self):
        full: dict[tuple[int, int], np.ndarray] = {}
        for (u, v), perm in self.table.items():
            u, v = int(u), int(v)
            if not self.base.has_edge(u, v):
                raise BundleError(f"voltage on non-edge {(u, v)} of the base")
            p = np.asarray(perm, dtype=int)
            if p.shape != (self.fiber.n,) or not is_automorphism(self.fiber, p):
                raise BundleError(f"voltage on {(u, v)} is not a fiber automorphism")
            inv = np.argsort(p)
            if (v, u) in full and not np.array_equal(full[(v, u)], inv):
                raise BundleError(f"voltages on {(u, v)} and {(v, u)} are not inverse")
            full[(u, v)] = p
            full[(v, u)] = inv
        ident = np.arange(self.fiber.n)
        for u, v in self.base.edges:
            full.setdefault((u, v), ident)
            full.setdefault((v, u), ident)
        for p in full.values():
            p.flags.writeable = False
        object.__setattr__(self, "table", full)

    def __call__(self, u: int, v: int) -> np.ndarray:
        return self.table[(u, v)]

    @classmethod
    def identity(cls, base: Graph, fiber: Graph) -> "VoltageAssignment":
        return cls(base, fiber, {})

    def is_trivial(self) -> bool:
        ident = np.arange(self.fiber.n)
        return all(np.array_equal(p, ident) for p in self.table.values())


@dataclass(frozen=True, eq=False)
class GraphBundle:
    """Total graph over ``base`` with fiber ``fiber`` and projection onto the base."""

    total: Graph
    base: Graph
    fiber: Graph
    projection: GraphMap
    indexing: ProductIndexing
    voltages: VoltageAssignment | None = None

    @property
    def n(self) -> int:
        return self.total.n


def build_bundle(base: Graph, fiber: Graph, voltages: VoltageAssignment | None = None) -> GraphBundle:
    if voltages is None:
        voltages = VoltageAssignment.identity(base, fiber)
    if voltages.base != base or voltages.fiber != fiber:
        raise BundleError("voltage assignment built for different graphs")
    idx = ProductIndexing(base, fiber)
    edges = []
    for v in range(base.n):
        for i, j in fiber.edges:
            edges.append((int(idx.index(v, i)), int(idx.index(v, j))))
    for u, v in base.edges:
        sigma = voltages(u, v)
        for i in range(fiber.n):
            edges.append((int(idx.index(u, i)), int(idx.index(v, sigma[i]))))
    total = Graph(idx.n, tuple(edges))
    proj = GraphMap(total, base, idx.base_of(np.arange(total.n)))
    return GraphBundle(total, base, fiber, proj, idx, voltages)


def holonomy(bundle: GraphBundle, cycle: Sequence[int]) -> np.ndarray:
    """Composed voltage around the closed walk ``cycle[0] -> ... -> cycle[0]``."""
    g = np.arange(bundle.fiber.n)
    walk = list(cycle) + [cycle[0]]
    for a, b in zip(walk[:-1], walk[1:]):
        g = bundle.voltages(a, b)[g]
    return g


# -- validation ------------------------------------------------------------


@dataclass
class BundleValidation:
    projection_ok: bool
    fibers_ok: bool
    stars_ok: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.projection_ok and self.fibers_ok and self.stars_ok


def _star_chart(
    total: Graph, proj: GraphMap, fiber: Graph, v: int, fiber_iso: np.ndarray
) -> GraphMap | None:
    """Candidate chart ``N_v x F -> total`` built from matchings between fibers."""
    star, emb = neighborhood_star(proj.target, v)
    _, sidx = cartesian_product(star, fiber)
    preimage = [np.flatnonzero(proj.vertex_map == w) for w in range(proj.target.n)]
    over_v = preimage[v][fiber_iso]  # fiber vertex i -> total vertex
    vm = np.empty(star.n * fiber.n, dtype=int)
    for k, w in enumerate(emb.vertex_map):
        if w == v:
            vm[sidx.index(k, np.arange(fiber.n))] = over_v
            continue
        block = total.adjacency[np.ix_(over_v, preimage[w])]
        if not (np.all(block.sum(1) == 1) and np.all(block.sum(0) == 1)):
            return None
        vm[sidx.index(k, np.arange(fiber.n))] = preimage[w][block.argmax(1)]
    prod, _ = cartesian_product(star, fiber)
    try:
        return GraphMap(prod, total, vm)
    except GraphError:
        return None


def validate_bundle(total: Graph, projection: GraphMap, fiber: Graph) -> BundleValidation:
    """Check the bundle axioms for a candidate ``(total, projection, fiber)``."""
    failures = []
    base = projection.target
    projection_ok = projection.source == total and projection.is_surjective()
    if not projection_ok:
        failures.append("projection is not a surjective map from the total graph")
        return BundleValidation(False, False, False, failures)

    isos = {}
    for v in range(base.n):
        sub, _ = induced_subgraph(total, np.flatnonzero(projection.vertex_map == v))
        iso = find_isomorphism(fiber, sub)
        if iso is None:
            failures.append(f"fiber over base vertex {v} is not isomorphic to F")
        else:
            isos[v] = iso
    fibers_ok = len(isos) == base.n

    stars_ok = fibers_ok
    if fibers_ok:
        for v in range(base.n):
            chart = _star_chart(total, projection, fiber, v, isos[v])
            if chart is None or not is_local_isomorphism(chart):
                stars_ok = False
                failures.append(f"no local trivialization over the star of {v}")
    return BundleValidation(True, fibers_ok, stars_ok, failures)


def validate(bundle: GraphBundle) -> BundleValidation:
    return validate_bundle(bundle.total, bundle.projection, bundle.fiber)


# -- local trivializations ---------------------------------------------------


def trivialize(bundle: GraphBundle, u: Iterable[int], root: int | None = None) -> LocalIsomorphism:
    """Chart ``U x F -> total`` commuting with the projections.

    Fiber frames are propagated from ``root`` along a BFS tree of the
    subgraph induced on ``u`` (lowest index first); every non-tree edge is
    then checked for consistency.
    """
    if bundle.voltages is None:
        raise BundleError("trivialize needs a bundle built from voltages")
    sub, emb = induced_subgraph(bundle.base, u)
    verts = emb.vertex_map
    local = {int(w): k for k, w in enumerate(verts)}
    if root is None:
        root = int(verts[0])
    if root not in local:
        raise BundleError(f"root {root} not in the cover set")
    if not sub.is_connected():
        raise BundleError("cover set does not induce a connected subgraph")

    nf = bundle.fiber.n
    frame: dict[int, np.ndarray] = {root: np.arange(nf)}
    parent = {root: None}
    queue = deque([root])
    while queue:
        p = queue.popleft()
        for w in bundle.base.neighbors[p]:
            if w in local and w not in frame:
                frame[w] = bundle.voltages(p, w)[frame[p]]
                parent[w] = p
                queue.append(w)
    for a, b in sub.edges:
        a, b = int(verts[a]), int(verts[b])
        if parent.get(a) == b or parent.get(b) == a:
            continue
        if not np.array_equal(frame[b], bundle.voltages(a, b)[frame[a]]):
            raise NonTrivializable(
                f"twist inside cover set {sorted(local)} along edge {(a, b)}"
            )

    prod, sidx = cartesian_product(sub, bundle.fiber)
    vm = np.empty(prod.n, dtype=int)
    for k, w in enumerate(verts):
        vm[sidx.index(k, np.arange(nf))] = bundle.indexing.index(int(w), frame[int(w)])
    chart = LocalIsomorphism(prod, bundle.total, vm)
    # p1 = pi o chart
    if not np.array_equal(bundle.projection.vertex_map[vm], verts[sidx.base_of(np.arange(prod.n))]):
        raise BundleError("chart does not commute with the projection")
    return chart


# -- covers and partitions of unity ----------------------------------------


@dataclass(frozen=True, eq=False)
class Cover:
    """Connected vertex subsets of the base whose induced subgraphs cover it.

    With ``cover_edges=False`` only vertex coverage is required, which admits
    covers by singletons.
    """

    base: Graph
    sets: tuple[tuple[int, ...], ...]
    cover_edges: bool = True

    def __post_init__(self):
        sets = tuple(tuple(sorted(set(int(v) for v in s))) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        for s in sets:
            if not s:
                raise NotACover("empty cover set")
            if s[0] < 0 or s[-1] >= self.base.n:
                raise NotACover(f"cover set {s} out of range")
            sub, _ = induced_subgraph(self.base, s)
            if not sub.is_connected():
                raise NotACover(f"cover set {s} is not connected")
        missing = uncovered(self.base, sets, self.cover_edges)
        if missing:
            raise NotACover(f"cover misses {missing[:5]}{' ...' if len(missing) > 5 else ''}")

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def subgraph(self, k: int) -> tuple[Graph, LocalIsomorphism]:
        return induced_subgraph(self.base, self.sets[k])

    def multiplicity(self) -> np.ndarray:
        mult = np.zeros(self.base.n, dtype=int)
        for s in self.sets:
            mult[list(s)] += 1
        return mult


def uncovered(base: Graph, sets: Sequence[Sequence[int]], cover_edges: bool = True) -> list:
    """Vertices and edges of ``base`` not inside any set."""
    vs = set()
    es = set()
    for s in sets:
        s = set(s)
        vs |= s
        if cover_edges:
            es |= {e for e in base.edges if e[0] in s and e[1] in s}
    missing: list = [v for v in range(base.n) if v not in vs]
    if cover_edges:
        missing += [e for e in base.edges if e not in es]
    return missing


def star_cover(base: Graph) -> Cover:
    return Cover(base, tuple((v,) + base.neighbors[v] for v in range(base.n)))


def trivial_cover(base: Graph) -> Cover:
    return Cover(base, (tuple(range(base.n)),))


def singleton_cover(base: Graph) -> Cover:
    """One set per vertex; covers vertices only."""
    return Cover(base, tuple((v,) for v in range(base.n)), cover_edges=False)


def stride_reach_cover(
    base: Graph, cycle_order: Sequence[int], stride: int, reach: int
) -> Cover:
    """Balls of radius ``reach`` centred at every ``stride``-th vertex of ``cycle_order``."""
    if stride < 1 or reach < 0:
        raise ValueError(f"need stride >= 1 and reach >= 0, got {stride}, {reach}")
    centers = list(cycle_order)[::stride]
    return Cover(base, tuple(base.ball(c, reach) for c in centers))


@dataclass(frozen=True, eq=False)
class PartitionOfUnity:
    """Weights ``rho[k, v]`` for cover set ``k`` and base vertex ``v``."""

    cover: Cover
    weights: np.ndarray = field(repr=False)
    check: bool = True

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if w.shape != (len(self.cover), self.cover.base.n):
            raise BundleError(
                f"partition has shape {w.shape}, expected "
                f"({len(self.cover)}, {self.cover.base.n})"
            )
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)
        if self.check:
            problems = partition_problems(self.cover, w)
            if problems:
                raise BundleError("invalid partition of unity: " + "; ".join(problems))

    def __getitem__(self, k: int) -> np.ndarray:
        return self.weights[k]


def partition_problems(cover: Cover, w: np.ndarray, tol: float = 1e-12) -> list[str]:
    problems = []
    if np.any(w < 0) or np.any(w > 1):
        problems.append("weights outside [0, 1]")
    for k, s in enumerate(cover.sets):
        outside = np.delete(w[k], list(s))
        if np.any(outside != 0):
            problems.append(f"weight of set {k} supported outside the set")
    sums = w.sum(0)
    bad = np.flatnonzero(np.abs(sums - 1) > tol)
    if bad.size:
        problems.append(f"weights do not sum to 1 at vertices {bad.tolist()[:5]}")
    return problems


def inverse_multiplicity_partition(cover: Cover) -> PartitionOfUnity:
    mult = cover.multiplicity()
    w = np.zeros((len(cover), cover.base.n))
    for k, s in enumerate(cover.sets):
        w[k, list(s)] = 1.0 / mult[list(s)]
    return PartitionOfUnity(cover, w)


def indicator_partition(cover: Cover, owners: Sequence[int] | None = None) -> PartitionOfUnity:
    """Each vertex gets weight 1 in exactly one set containing it.

    ``owners[v]`` names that set; by default the first set containing ``v``.
    """
    w = np.zeros((len(cover), cover.base.n))
    for v in range(cover.base.n):
        k = owners[v] if owners is not None else next(
            k for k, s in enumerate(cover.sets) if v in s
        )
        w[k, v] = 1.0
    return PartitionOfUnity(cover, w)


# -- named bundles ---------------------------------------------------------


def reversal(n: int) -> np.ndarray:
    return np.arange(n)[::-1].copy()


def twisted_cycle_bundle(base_len: int, fiber_len: int, twist_edge: tuple[int, int] | None = None) -> GraphBundle:
    """Cycle base, path fiber, fiber reversal on one edge (a Moebius band)."""
    base = cycle_graph(base_len)
    fiber = path_graph(fiber_len)
    if twist_edge is None:
        twist_edge = (base_len - 1, 0)
    v = VoltageAssignment(base, fiber, {twist_edge: reversal(fiber_len)})
    return build_bundle(base, fiber, v)


def mobius_bundle() -> GraphBundle:
    """Five-cycle base, two-vertex path fiber, one flip."""
    return twisted_cycle_bundle(5, 2)


def cylinder_bundle() -> GraphBundle:
    return build_bundle(cycle_graph(5), path_graph(2))


GLUED_TWIST_EDGE = (19, 20)


def glued_bundle(n: int = 27, fiber_len: int = 7, twist_edge: tuple[int, int] = GLUED_TWIST_EDGE) -> GraphBundle:
    """Cylinder and Moebius band glued along the chord times the fiber.

    The base is a 27-cycle with a chord ``(0, 12)``.  The fiber (path on 7
    vertices) is reversed across ``twist_edge``, which lies on the longer
    loop ``12, 13, ..., 26, 0``; the shorter loop ``0, ..., 12`` is untwisted.
    """
    base = chorded_cycle_graph(n)
    fiber = path_graph(fiber_len)
    v = VoltageAssignment(base, fiber, {twist_edge: reversal(fiber_len)})
    return build_bundle(base, fiber, v)


def pentane_bundle() -> GraphBundle:
    """Fifteen-cycle base, six-vertex path fiber, one reversal on edge (14, 0)."""
    return twisted_cycle_bundle(15, 6)


PRESETS = {
    "mobius": mobius_bundle,
    "cylinder": cylinder_bundle,
    "glued": glued_bundle,
    "pentane": pentane_bundle,
}
