"""Averagely-dense spectral clustering, baselines, and a benchmark harness."""

from .dataio import DataMatrix, EdgeList, load_edge_list, load_labeled_points, load_points
from .datagen import SyntheticSpec, generate
from .eigen import EigenPairs, full_dense_eigs, truncated_eigs
from .embedding import Embedding, project_embedding, projected_density_check
from .graph import (
    NeighborhoodSpec,
    SparseSymmetricMatrix,
    adjacency_from_edge_list,
    choose_epsilon,
    epsilon_graph,
    knn_graph,
    pairwise_distances,
    symmetric_normalize,
)
from .kmeans import Clustering, KMeansResult, kmeans, labeling_inertia, trace_objective
from .metrics import (
    average_density_objective,
    cut_value,
    density,
    f_measure,
    hungarian,
    nmi,
    ratio_cut,
)
from .pipelines import (
    DbscanConfig,
    SpectaclConfig,
    auto_epsilon,
    dbscan,
    spectacl,
    spectral_clustering,
)

__version__ = "0.1.0"

__all__ = [
    "Clustering",
    "DataMatrix",
    "DbscanConfig",
    "EdgeList",
    "EigenPairs",
    "Embedding",
    "KMeansResult",
    "NeighborhoodSpec",
    "SparseSymmetricMatrix",
    "SpectaclConfig",
    "SyntheticSpec",
    "adjacency_from_edge_list",
    "auto_epsilon",
    "average_density_objective",
    "choose_epsilon",
    "cut_value",
    "dbscan",
    "density",
    "epsilon_graph",
    "f_measure",
    "full_dense_eigs",
    "generate",
    "hungarian",
    "kmeans",
    "knn_graph",
    "labeling_inertia",
    "load_edge_list",
    "load_labeled_points",
    "load_points",
    "nmi",
    "pairwise_distances",
    "project_embedding",
    "projected_density_check",
    "ratio_cut",
    "spectacl",
    "spectral_clustering",
    "symmetric_normalize",
    "trace_objective",
    "truncated_eigs",
]
