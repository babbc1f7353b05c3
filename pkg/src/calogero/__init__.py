"""Self-adjoint Hamiltonians for the inverse-square potential on the half-line.

The library covers the four coupling regions of alpha/x^2, the boundary
conditions at the origin that select each self-adjoint operator, closed-form
spectra and normalized eigenfunctions, spectral densities through the
resolvent, the associated eigenfunction-expansion transforms, independent
finite-difference and shooting cross-checks, and finite scale
transformations.
"""

from .special import (
    EULER_GAMMA,
    Order,
    UnsupportedOrderError,
    bessel_j,
    bessel_k,
    hankel1,
    log_gamma,
    neumann0,
    neumann0_remainder,
    theta_sigma,
)
from .extensions import (
    BoundaryCoefficients,
    CouplingRegime,
    DegenerateInputError,
    ExtendedReal,
    ExtensionSpec,
    Region,
    ScaleParam,
    SignTag,
    boundary_asymptote,
    classify,
    extension,
    fit_boundary_coefficients,
    param_convert,
    param_convert_inverse,
)
from .grids import GridFunction, energy_grid, gauss_panels, x_grid
from .spectral import (
    BoundState,
    FundamentalTriple,
    IllConditionedEvaluationError,
    SpectralMeasure,
    bound_state_weight_from_omega,
    bound_states,
    eigenfunction,
    find_bound_levels,
    fundamental_solutions,
    greens_density,
    omega,
    phase_function,
    spectral_density,
    spectral_measure,
)
from .transform import (
    EigenfunctionExpansion,
    TransformResult,
    forward,
    inverse,
    parseval_residual,
)
from .oracle import (
    DiscretizedProblem,
    PotentialSpec,
    discretize,
    fd_eigen,
    regularization_experiment,
    shoot,
)
from .symmetry import CovarianceReport, covariance_check, scale_transform

__version__ = "0.1.0"
