"""topoinfo: higher-order information measures and Rips persistence on point clouds.

The package links two views of "higher-order structure" in an (n, d) point
cloud: multivariate information (total correlation, dual total correlation,
O-information, S-information, estimated with Chebyshev k-NN searches) and
persistent homology of the Vietoris-Rips filtration (dimensions 0-2).
Synthetic samplers, a circular-shift significance test, and a command line
tie the two together.
"""

from .cloud import as_point_cloud, load_cloud_csv, save_cloud_csv
from .errors import CsvParseError, DegenerateInputError, InvalidArgumentError
from .experiments import (
    ShapeRow,
    TriadRecord,
    battery_correlations,
    build_shape_cloud,
    load_shape_expectations,
    run_shape_table,
    synthetic_triad_battery,
)
from .homology import (
    FiltrationSpec,
    PersistenceDiagram,
    PersistencePair,
    PersistenceSummary,
    enclosing_radius,
    persistence_summary,
    rips_persistence,
    subsample,
)
from .info import (
    DiscreteDistribution,
    InfoSummary,
    discrete_mutual_information,
    discrete_summary,
    info_summary,
    kl_entropy,
    knn_dual_total_correlation,
    knn_oinformation,
    knn_total_correlation,
    ksg_mutual_information,
    pairwise_mutual_informations,
    xor_distribution,
)
from .manifolds import (
    PcaResult,
    RotationSpec,
    pca_rotate,
    rotate_euler,
    sample_ball,
    sample_line,
    sample_plane,
    sample_sphere,
    sample_torus,
    sample_torus_knot,
)
from .neighbors import (
    DEFAULT_JITTER,
    DEFAULT_K,
    DistanceMatrix,
    apply_jitter,
    chebyshev,
    digamma,
    distance_matrix,
    kth_neighbor_distance,
    kth_neighbor_distances,
    marginal_range_count,
    strict_range_counts,
)
from .stats import (
    CorrelationResult,
    MultiSeries,
    NullEnsemble,
    SignificanceResult,
    circular_shift,
    classify_triad,
    null_ensemble,
    spearman,
)

__version__ = "0.1.0"

__all__ = [
    "CorrelationResult",
    "CsvParseError",
    "DEFAULT_JITTER",
    "DEFAULT_K",
    "DegenerateInputError",
    "DiscreteDistribution",
    "DistanceMatrix",
    "FiltrationSpec",
    "InfoSummary",
    "InvalidArgumentError",
    "MultiSeries",
    "NullEnsemble",
    "PcaResult",
    "PersistenceDiagram",
    "PersistencePair",
    "PersistenceSummary",
    "RotationSpec",
    "ShapeRow",
    "SignificanceResult",
    "TriadRecord",
    "apply_jitter",
    "as_point_cloud",
    "battery_correlations",
    "build_shape_cloud",
    "load_shape_expectations",
    "run_shape_table",
    "synthetic_triad_battery",
    "chebyshev",
    "circular_shift",
    "classify_triad",
    "digamma",
    "discrete_mutual_information",
    "discrete_summary",
    "distance_matrix",
    "enclosing_radius",
    "info_summary",
    "kl_entropy",
    "knn_dual_total_correlation",
    "knn_oinformation",
    "knn_total_correlation",
    "ksg_mutual_information",
    "kth_neighbor_distance",
    "kth_neighbor_distances",
    "load_cloud_csv",
    "marginal_range_count",
    "null_ensemble",
    "pairwise_mutual_informations",
    "pca_rotate",
    "persistence_summary",
    "rips_persistence",
    "rotate_euler",
    "sample_ball",
    "sample_line",
    "sample_plane",
    "sample_sphere",
    "sample_torus",
    "sample_torus_knot",
    "save_cloud_csv",
    "spearman",
    "strict_range_counts",
    "subsample",
    "xor_distribution",
]
