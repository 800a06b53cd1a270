"""The bundle transform: a tight frame on the total graph built from factor bases.

Each atom is indexed by a cover set ``U``, a base atom ``b`` and a fiber atom
``f``.  Over ``U`` the base atom is weighted by the square root of the
partition function, restricted to ``U``, tensored with the fiber atom and
pushed into the total graph through the chart of ``U``.  Because the weights
square-sum to one at each base vertex and the factor bases are orthonormal,
the atoms form a tight frame with bound 1, so synthesis is the adjoint of
analysis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .bundle import Cover, GraphBundle, PartitionOfUnity, trivialize
from .graphs import LocalIsomorphism, Signal, signal_values
from .spectral import OrthonormalDictionary


@dataclass(frozen=True, eq=False)
class BundleDictionary:
    bundle: GraphBundle
    cover: Cover
    partition: PartitionOfUnity
    base_dict: OrthonormalDictionary
    fiber_dict: OrthonormalDictionary
    matrix: np.ndarray = field(repr=False)
    charts: tuple[LocalIsomorphism, ...] = field(repr=False)

    @property
    def graph(self):
        return self.bundle.total

    @property
    def shape(self) -> tuple[int, int, int]:
        """Coefficient layout ``(sets, base atoms, fiber atoms)``."""
        return (len(self.cover), len(self.base_dict), len(self.fiber_dict))

    def __len__(self) -> int:
        return self.matrix.shape[1]

    def index(self, k: int) -> tuple[int, int, int]:
        """``(set, base atom, fiber atom)`` of column ``k``."""
        return tuple(int(i) for i in np.unravel_index(k, self.shape))

    def column(self, u: int, b: int, f: int) -> int:
        return int(np.ravel_multi_index((u, b, f), self.shape))

    def atom(self, u: int, b: int, f: int) -> Signal:
        return Signal(self.graph, self.matrix[:, self.column(u, b, f)])

    @cached_property
    def atom_norms(self) -> np.ndarray:
        return np.linalg.norm(self.matrix, axis=0)

    @cached_property
    def frame_bounds(self) -> tuple[float, float]:
        return frame_bounds(self)

    def analyze(self, x) -> np.ndarray:
        return self.matrix.T @ np.asarray(x, dtype=float)

    def synthesize(self, c) -> np.ndarray:
        return self.matrix @ np.asarray(c, dtype=float)


@dataclass(frozen=True, eq=False)
class BundleCoefficients:
    """Analysis coefficients laid out as ``values[U, b, f]``."""

    dictionary: BundleDictionary
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != self.dictionary.shape:
            raise ValueError(f"coefficients have shape {vals.shape}, expected {self.dictionary.shape}")
        object.__setattr__(self, "values", vals)

    def flat(self) -> np.ndarray:
        return self.values.ravel()

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))


def build_dictionary(
    bundle: GraphBundle,
    cover: Cover,
    partition: PartitionOfUnity,
    base_dict: OrthonormalDictionary,
    fiber_dict: OrthonormalDictionary,
) -> BundleDictionary:
    pc = partition.cover
    if cover.base != bundle.base or (pc.base, pc.sets) != (cover.base, cover.sets):
        raise ValueError("cover and partition must belong to the bundle's base")
    if base_dict.graph != bundle.base or fiber_dict.graph != bundle.fiber:
        raise ValueError("factor dictionaries live on the wrong graphs")

    psi_b = base_dict.matrix
    psi_f = fiber_dict.matrix
    nb, nf = psi_b.shape[1], psi_f.shape[1]
    mat = np.zeros((bundle.n, len(cover) * nb * nf))
    charts = []
    for k, s in enumerate(cover.sets):
        chart = trivialize(bundle, s)
        charts.append(chart)
        s = list(s)
        weighted = np.sqrt(partition[k][s])[:, None] * psi_b[s, :]
        # rows: local (u, i) row-major; cols: (b, f) row-major
        block = np.kron(weighted, psi_f)
        mat[chart.vertex_map, k * nb * nf:(k + 1) * nb * nf] = block
    mat.flags.writeable = False
    return BundleDictionary(bundle, cover, partition, base_dict, fiber_dict, mat, tuple(charts))


def analyze(d: BundleDictionary, x) -> BundleCoefficients:
    vals = signal_values(x, d.graph)
    return BundleCoefficients(d, d.analyze(vals).reshape(d.shape))


def synthesize(d: BundleDictionary, c) -> Signal:
    vals = c.values if isinstance(c, BundleCoefficients) else np.asarray(c, dtype=float)
    if vals.size != len(d):
        raise ValueError(f"expected {len(d)} coefficients, got {vals.size}")
    return Signal(d.graph, d.synthesize(vals.ravel()))


def frame_operator(d) -> np.ndarray:
    return d.matrix @ d.matrix.T


def frame_bounds(d) -> tuple[float, float]:
    """Extreme eigenvalues of the frame operator."""
    lam = np.linalg.eigvalsh(frame_operator(d))
    return float(lam[0]), float(lam[-1])


def cumulative_coherence(d, m: int, normalize: bool = True, zero_tol: float = 1e-10, block: int = 512) -> float:
    """Largest sum of the ``m`` biggest correlations of one atom with the others.

    Atoms with norm below ``zero_tol`` are dropped.  Per-row top-``m`` sums
    give the maximum over index sets exactly.
    """
    mat = np.asarray(d.matrix)
    norms = np.linalg.norm(mat, axis=0)
    keep = norms > zero_tol
    a = mat[:, keep]
    if normalize:
        a = a / norms[keep]
    k = a.shape[1]
    if not 1 <= m < k:
        raise ValueError(f"need 1 <= m < {k} atoms, got m={m}")
    best = 0.0
    for start in range(0, k, block):
        stop = min(start + block, k)
        g = np.abs(a[:, start:stop].T @ a)
        g[np.arange(stop - start), np.arange(start, stop)] = -np.inf
        top = np.partition(g, k - m, axis=1)[:, k - m:]
        best = max(best, float(top.sum(1).max()))
    return best


def atom_norm_stats(d) -> tuple[float, float]:
    """Population mean and standard deviation of the atom norms."""
    norms = np.linalg.norm(np.asarray(d.matrix), axis=0)
    return float(norms.mean()), float(norms.std())


def partition_energies(bundle: GraphBundle, partition: PartitionOfUnity, x) -> np.ndarray:
    """``||pi^* sqrt(rho_U) * x||^2`` for every cover set ``U``.

    These sum to ``||x||^2`` for any partition of unity.
    """
    vals = signal_values(x, bundle.total)
    lifted = np.sqrt(partition.weights)[:, bundle.projection.vertex_map]
    return ((lifted * vals) ** 2).sum(1)
