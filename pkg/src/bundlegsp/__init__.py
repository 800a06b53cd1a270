"""Tight frames for signals on graph bundles.

A graph bundle is a graph that looks like a Cartesian product ``B x F``
around every base vertex but may be twisted globally (the Moebius ladder over
a cycle is the standard example).  Orthonormal bases on the base and fiber
are lifted through local product charts, weighted by a partition of unity on
the base, into a tight frame on the total graph.
"""

from .bundle import (
    Cover,
    GraphBundle,
    NonTrivializable,
    NotACover,
    PartitionOfUnity,
    VoltageAssignment,
    build_bundle,
    glued_bundle,
    inverse_multiplicity_partition,
    mobius_bundle,
    pentane_bundle,
    star_cover,
    stride_reach_cover,
    trivial_cover,
    trivialize,
    validate_bundle,
)
from .denoise import NoiseModel, add_awgn, denoise_experiment, mse, universal_threshold_denoise
from .graphs import Graph, GraphMap, LocalIsomorphism, Signal, cartesian_product, cycle_graph, path_graph
from .spectral import fourier_basis, laplacian, spectral_moment, standard_basis
from .transform import (
    BundleDictionary,
    analyze,
    atom_norm_stats,
    build_dictionary,
    cumulative_coherence,
    frame_bounds,
    synthesize,
)

__version__ = "0.1.0"
