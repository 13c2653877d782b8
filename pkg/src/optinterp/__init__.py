"""Norms of linear interpolation projectors on convex bodies, absorption
indices of simplices, and the bounds and constructions around them."""

from .bounds import (
    K_TABLE,
    NU_TABLE,
    THETA_UPPER_TABLE,
    BallOptimum,
    BoundReport,
    ball_optimum,
    bound_report,
    kappa_sigma,
    n0_sufficient,
    nu_bounds,
    theta_ball_34_check,
    theta_ball_lower,
    theta_cube_lower,
    theta_cube_sqrt_lower,
    theta_lower_general,
    upper_estimates_table,
    xi_cube_bounds,
)
from .constructions import (
    catalog,
    hadamard,
    is_hadamard,
    maxvol_simplex,
    maxvol_simplex_cube,
    regular_simplex_in_ball,
    regular_simplex_in_cube,
)
from .errors import (
    DegenerateSimplex,
    DimensionMismatch,
    DimensionTooLarge,
    DomainError,
    NotConstructible,
    OptInterpError,
    SimplexNotInBody,
    UnsupportedBody,
)
from .evolume import EnGammaSpec, e_volume_exact, e_volume_mc
from .geometry import (
    Ball,
    Cube,
    PointCloud,
    Simplex,
    VertexPolytope,
    axial_diameter,
    barycentric_system,
    eval_lambda,
    volume,
)
from .legendre import chi, chi_inv, chi_sum
from .optimizer import SearchConfig, certify, continuous_local_search, exhaustive_cube_vertex_search
from .projector import Projector, absorption, alpha, norm, xi

__all__ = [name for name in dir() if not name.startswith("_")]
