"""Generating sets of SO+(Q_n, Z) for Q_n = x1^2 + x2^2 + x3^2 - n x4^2.

Everything is exact: integer matrices, rational chart coordinates, and an
exact convex-polytope engine for the Dirichlet domain of the base point.
"""

from .quadform import Form, anisotropy_certificate_mod8, bilinear, isotropy_witness_search, pseudolength
from .isometry import (
    InvalidIsometry,
    Isometry,
    displacement_cosh,
    from_matrix,
    identity,
    inverse,
    multiply,
    reference_catalog,
)
from .lattice_enum import assemble_isometries, enumerate_right_columns, enumerate_unit_vectors
from .stabilizer import StabilizerGroup, build_stabilizer, canonicalize_by_stabilizer, cone_contains
from .chart import (
    HalfSpace,
    apply_isometry_chart,
    bisector_halfspace,
    cosh_sq_distance_from_origin,
    halfspace_margin,
)
from .polytope import EmptyInterior, Polytope, intersect_halfspaces
from .dirichlet import (
    DomainResult,
    NonTermination,
    circumradius_criterion,
    compute_dirichlet_domain,
    intersect_with_cone,
    is_compact_in_ball,
)
from .genset import Word, evaluate_word, reduce_face_pairings, verify_generation, verify_reference_relations

__version__ = "0.1.0"
