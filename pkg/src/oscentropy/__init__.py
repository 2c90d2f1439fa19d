"""Exact and large-D asymptotic uncertainty measures of D-dimensional harmonic states."""

from .entropies import (
    EntropyResult,
    EntropySpec,
    UncertaintyReport,
    disequilibrium,
    e_tilde,
    e_tilde_growth_exponent,
    entropic_moment_radial,
    entropy,
    m_tilde,
    renyi_angular,
    renyi_radial,
    renyi_total,
    shannon,
    tsallis_from_renyi,
    uncertainty_sum,
)
from .laguerre_asym import (
    AsymptoticBreakdown,
    J1Params,
    corollary_asym,
    d1_coefficient,
    j1_asym,
    j1_exact,
)
from .moments import (
    BoundsReport,
    ClassicalOrbit,
    MomentQuery,
    characteristic_length,
    check_bounds,
    heisenberg_product,
    radial_moment,
)
from .report import ConvergenceReport, fit_loglog_slope
from .specfun import (
    ConvergenceError,
    LogValue,
    QuadratureSpec,
    digamma,
    gegenbauer_eval,
    gegenbauer_roots,
    integrate_log,
    laguerre_eval,
    laguerre_roots,
    log_gamma,
    log_pochhammer,
)
from .states import (
    HarmonicState,
    Space,
    ValidationError,
    energy,
    format_state,
    mu_families,
    parse_state,
    radial_density,
    validate,
)

__version__ = "0.1.0"
