"""Numerical toolkit for the two-parameter family of surface metrics carrying
biconservative immersions with parallel normalized mean curvature in H^4.

Submodules: ``family`` (parameters, potential, cubic), ``odeflow`` (profile
integration), ``geometry`` (charts and curvature), ``characterize`` (the
level-curve curvature description), ``extrinsic`` (structure equations),
``isometry`` (classification) and ``cli``.
"""

from .characterize import (
    KappaState,
    K_from_kappa,
    conditions_check,
    connection_coefficients,
    frak_A,
    frak_B,
    kappa_chain_from_f,
    kappa_ode_residual,
    recover_params,
)
from .errors import DomainError, InadmissibleError, InconsistencyError, IntegrationError
from .extrinsic import build_frame, first_normal_rank, fundamental_residuals, pde_residual
from .family import (
    DomainInterval,
    FamilyParams,
    K_of_f,
    admissible_domain,
    curvature_cubic_h,
    f_max,
    invert_curvature_cubic,
    potential_P,
    potential_P_prime,
)
from .geometry import (
    Chart,
    ChristoffelSymbols,
    MetricComponents,
    christoffel,
    circle_check,
    gauss_curvature_analytic,
    gauss_curvature_fd,
    kappa_from_K,
    level_curve_curvature,
    metric_at,
)
from .isometry import IsometryVerdict, canonical_form, classify, invariant_match
from .odeflow import (
    FProfile,
    KappaProfile,
    first_integral_C,
    integrate_f_ode,
    integrate_f_ode_both,
    integrate_kappa_ode,
    integrate_kappa_ode_both,
    u_of_f_quadrature,
)
from .report import Residual, ResidualReport

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
