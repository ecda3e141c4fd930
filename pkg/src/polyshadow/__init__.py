"""Shadow volumes of the regular simplex, cube and cross-polytope, with brute-force oracles."""
from ._backend import HAS_NUMBA, backend_name
from .closedform import (cauchy_shadow, cube_hyperplane_shadow, cube_planar_shadow, facet_data,
                         simplex_gauge_diff_body, simplex_hyperplane_shadow, simplex_width,
                         width_projection_ratio)
from .linalg import (Direction, OrthoPair, normalize, orthobasis_of_complement, orthonormal_pair,
                     project_zero_sum, sample_direction)

__version__ = "0.1.0"

__all__ = [
    "HAS_NUMBA", "backend_name", "Direction", "OrthoPair", "normalize", "project_zero_sum",
    "orthonormal_pair", "sample_direction", "orthobasis_of_complement", "simplex_hyperplane_shadow",
    "cube_hyperplane_shadow", "cube_planar_shadow", "simplex_width", "simplex_gauge_diff_body",
    "facet_data", "cauchy_shadow", "width_projection_ratio",
]
