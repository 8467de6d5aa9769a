"""Numerical ranges of nonnegative matrices over the max-times semiring."""
from .core import (DEFAULT_TOLERANCE, Tolerance, block_diag, build_banded_toeplitz,
                   conjugate_by_permutation, identity, matrix_power, max_convex_hull,
                   max_eigenvalue, max_trace, oplus, otimes, outer, permutation_matrix,
                   sup_norm)
from .errors import (EnumerationLimitError, MaxAlgebraError, NegativeEntryError,
                     ShapeError)
from .intervals import Interval, IntervalSet
from .isometry import (MaxIsometry, SupportPattern, adjacency_graph, certify_rank_k,
                       enumerate_support_families, sample_isometry, validate_isometry)
from .joint import (BoxRegion, PointCloud, drop_dominated_column, joint_bounding_box,
                    joint_eval, joint_exact_full, joint_sample_cloud, lipschitz_certificate)
from .perm import (C_range, PointSet, c_range, c_range_hull, joint_C_range,
                   joint_c_range)
from .single import (achievable_diag_set, lambda_k, lambda_radius, rank_one_sum_bound,
                     witness_isometry, wmax, wmax_k)

__version__ = "0.1.0"

__all__ = [
    "BoxRegion", "C_range", "DEFAULT_TOLERANCE", "EnumerationLimitError", "Interval",
    "IntervalSet", "MaxAlgebraError", "MaxIsometry", "NegativeEntryError", "PointCloud",
    "PointSet", "ShapeError", "SupportPattern", "Tolerance", "achievable_diag_set",
    "adjacency_graph", "block_diag", "build_banded_toeplitz", "c_range", "c_range_hull",
    "certify_rank_k", "conjugate_by_permutation", "drop_dominated_column",
    "enumerate_support_families", "identity", "joint_C_range", "joint_bounding_box",
    "joint_c_range", "joint_eval", "joint_exact_full", "joint_sample_cloud", "lambda_k",
    "lambda_radius", "lipschitz_certificate", "matrix_power", "max_convex_hull",
    "max_eigenvalue", "max_trace", "oplus", "otimes", "outer", "permutation_matrix",
    "rank_one_sum_bound", "sample_isometry", "sup_norm", "validate_isometry",
    "witness_isometry", "wmax", "wmax_k",
]
