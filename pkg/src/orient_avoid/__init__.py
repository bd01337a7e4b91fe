"""Certificates and exhaustive checks for F-avoiding graph orientations."""

from .algebra import (
    at_condition_check,
    at_number,
    coeff_via_permanent,
    eulerian_diff,
    incidence_matrix,
    inclusion_matrix,
    multiplied_matrix,
    naive_coeff,
    permanent,
    rational_rank,
    zp_certificate,
)
from .constructors import (
    HCertificate,
    build_h_random,
    build_h_third,
    build_h_two_thirds,
    certify_h_condition,
    minimize_forward_edges,
)
from .graph import (
    ForbiddenSets,
    Graph,
    Mode,
    Orientation,
    Subgraph,
    VertexOrdering,
    convert_to_imbalance,
    imbalance,
    is_f_avoiding,
    left_right_degrees,
)
from .oracle import find_b_flow, find_orientation, frank_gyarfas_check
from .rounding import EdgeVertexMatrix, cycle_relief_vector, round_edge_vector

__version__ = "0.1.0"
