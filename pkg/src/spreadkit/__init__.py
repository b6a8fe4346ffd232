"""Partial spreads, constant-dimension subspace codes and bounds on A_q(n, 2k; k)."""

from .bounds import BoundsRecord, bounds_table, deficiency, exact_value, lower_bound, theta_floor, upper_bound
from .constructions import (
    MatrixCode,
    PivotVector,
    SubspaceCode,
    echelon_ferrers_assemble,
    lifted_mrd,
    min_rank_distance,
    mrd_full_rank_code,
    mrd_size,
    multi_component,
    spread,
)
from .finite_field import FieldCtx, expand_to_base, field_arith, make_field
from .search import enumerate_k_subspaces, max_partial_spread
from .subspace import (
    FqMatrix,
    Subspace,
    distances,
    enumerate_hyperplanes,
    enumerate_points,
    gaussian_binomial,
    hyperplane_section,
    rref,
    subspace_from_generators,
)
from .verification import (
    PartitionType,
    compute_holes,
    forbidden_partition_check,
    hyperplane_spectrum,
    partition_type,
    solve_standard_equations,
    tail_admissible,
    verify_spread,
)

__version__ = "0.1.0"
