"""Laplacians, orthonormal signal dictionaries, spectra and trace moments."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graphs import Graph, Signal

LAPLACIANS = ("combinatorial",)


def laplacian(g: Graph, kind: str = "combinatorial") -> np.ndarray:
    """``L = D - A`` as a dense float array."""
    if kind not in LAPLACIANS:
        raise NotImplementedError(f"Laplacian variant {kind!r} is not implemented")
    a = g.adjacency.astype(float)
    return np.diag(a.sum(1)) - a


@dataclass(frozen=True, eq=False)
class OrthonormalDictionary:
    """Orthonormal basis of signals on ``graph``, one atom per column."""

    graph: Graph
    matrix: np.ndarray = field(repr=False)
    eigenvalues: np.ndarray | None = field(default=None, repr=False)
    kind: str = "custom"

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.shape != (self.graph.n, self.graph.n):
            raise ValueError(f"basis matrix has shape {m.shape}, expected square of size {self.graph.n}")
        gram = m.T @ m
        if not np.allclose(gram, np.eye(self.graph.n), atol=1e-10, rtol=0):
            raise ValueError("atoms are not orthonormal")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def __len__(self) -> int:
        return self.matrix.shape[1]

    def atom(self, k: int) -> Signal:
        return Signal(self.graph, self.matrix[:, k])

    def analyze(self, x) -> np.ndarray:
        return self.matrix.T @ np.asarray(x, dtype=float)

    def synthesize(self, c) -> np.ndarray:
        return self.matrix @ np.asarray(c, dtype=float)


def fix_signs(vectors: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Flip columns so the first entry with ``|value| > tol`` is positive."""
    v = np.array(vectors, dtype=float)
    for k in range(v.shape[1]):
        nz = np.flatnonzero(np.abs(v[:, k]) > tol)
        if nz.size and v[nz[0], k] < 0:
            v[:, k] = -v[:, k]
    return v


def fourier_basis(g: Graph, kind: str = "combinatorial") -> OrthonormalDictionary:
    """Laplacian eigenvectors, eigenvalues ascending, deterministic signs."""
    lam, vecs = np.linalg.eigh(laplacian(g, kind))
    return OrthonormalDictionary(g, fix_signs(vecs), lam, kind="fourier")


def standard_basis(g: Graph) -> OrthonormalDictionary:
    return OrthonormalDictionary(g, np.eye(g.n), None, kind="standard")


def spectrum(g: Graph) -> np.ndarray:
    return np.linalg.eigvalsh(laplacian(g))


def spectral_moment(g: Graph | np.ndarray, k: int) -> float:
    """``(1/n) sum_i lambda_i^k`` for a graph or a precomputed spectrum."""
    if k < 0:
        raise ValueError(f"moment order must be nonnegative, got {k}")
    lam = spectrum(g) if isinstance(g, Graph) else np.asarray(g, dtype=float)
    return float(np.mean(lam**k))


def convolve_spectra(a, b) -> np.ndarray:
    """Sorted multiset of pairwise sums; the spectrum of a Cartesian product."""
    return np.sort(np.add.outer(np.asarray(a, float), np.asarray(b, float)).ravel())


def first_differing_moment(g: Graph, h: Graph, max_order: int = 12, tol: float = 1e-9):
    """Smallest ``k <= max_order`` where the spectral moments differ, else None."""
    lg, lh = spectrum(g), spectrum(h)
    for k in range(max_order + 1):
        a, b = spectral_moment(lg, k), spectral_moment(lh, k)
        if abs(a - b) > tol * max(1.0, abs(a), abs(b)):
            return k
    return None
