"""Exact cone quantile regions and Tukey depth regions for point clouds.

Everything is computed over exact rationals; the central entry points are
:func:`quantile_region`, :func:`tukey_region` and :func:`tukey_depth`, backed
by a Benson-type solver for the geometric dual of the region's vector linear
program and verified against independent brute-force oracles.
"""

from .core import (
    Cone,
    DataCloud,
    DualConeBasis,
    QuantileLevel,
    Rational,
    format_rational,
    make_dual_basis,
    parse_rational,
    project_data,
    validate_cone,
)
from .errors import (
    ConequantError,
    ContainsLine,
    DegenerateBasis,
    DimensionMismatch,
    DimensionNot2,
    EmptyBasis,
    IntegralNp,
    MalformedProgram,
    NotFullDimensional,
    NotInterior,
)
from .lp import (
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    LinearProgram,
    LpOutcome,
    build_lp,
    build_lp_dual,
    simplex_solve,
)
from .oracle import (
    CriticalDirectionSet,
    critical_directions,
    membership_sample,
    oracle_region_2d,
)
from .polyhedra import (
    Equation,
    Halfspace,
    Polyhedron,
    hrep_to_vrep,
    poly_contains,
    poly_equal,
    remove_redundant,
    vrep_to_hrep,
)
from .quantile import (
    QuantileRegion,
    lift_dataset,
    quantile_region,
    region_membership,
    tukey_depth,
    tukey_region,
    unlift_normal,
)
from .univariate import (
    ScalarSample,
    ScalarizedSolution,
    minimize_pinball_loss,
    pinball_loss,
    pinball_right_derivative,
    quantile_direct,
    solve_scalarized_lp,
)
from .vlp import (
    BensonStats,
    DualImagePoint,
    DualSolution,
    basis_vertices,
    benson_dual_solve,
    halfspaces_of,
    image_coords,
    initial_outer,
    weight_of,
)

__version__ = "0.1.0"

__all__ = [
    "BensonStats",
    "Cone",
    "ConequantError",
    "ContainsLine",
    "CriticalDirectionSet",
    "DataCloud",
    "DegenerateBasis",
    "DimensionMismatch",
    "DimensionNot2",
    "DualConeBasis",
    "DualImagePoint",
    "DualSolution",
    "EmptyBasis",
    "Equation",
    "Halfspace",
    "INFEASIBLE",
    "IntegralNp",
    "LinearProgram",
    "LpOutcome",
    "MalformedProgram",
    "NotFullDimensional",
    "NotInterior",
    "OPTIMAL",
    "Polyhedron",
    "QuantileLevel",
    "QuantileRegion",
    "Rational",
    "ScalarSample",
    "ScalarizedSolution",
    "UNBOUNDED",
    "basis_vertices",
    "benson_dual_solve",
    "build_lp",
    "build_lp_dual",
    "critical_directions",
    "format_rational",
    "halfspaces_of",
    "hrep_to_vrep",
    "image_coords",
    "initial_outer",
    "lift_dataset",
    "make_dual_basis",
    "membership_sample",
    "minimize_pinball_loss",
    "oracle_region_2d",
    "parse_rational",
    "pinball_loss",
    "pinball_right_derivative",
    "poly_contains",
    "poly_equal",
    "project_data",
    "quantile_direct",
    "quantile_region",
    "region_membership",
    "remove_redundant",
    "simplex_solve",
    "solve_scalarized_lp",
    "tukey_depth",
    "tukey_region",
    "unlift_normal",
    "validate_cone",
    "vrep_to_hrep",
    "weight_of",
]
