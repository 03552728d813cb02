"""Coverage moments and meta distribution for Poisson LEO constellations."""

from .analytic import (
    AlzerConstant,
    BetaFit,
    MomentResult,
    QuadratureRules,
    UnfittableMomentsError,
    alzer_constant,
    beta_fit,
    beta_meta_ccdf,
    conditional_coverage,
    coverage_probability,
    default_rules,
    interference_exponent,
    meta_ccdf,
    moment,
    nearest_distance_cdf,
    nearest_distance_pdf,
    variance,
)
from .geometry import (
    EARTH_RADIUS_M,
    DerivedGeometry,
    InvalidConfigError,
    SystemConfig,
    derive,
    distance_from_height,
    expected_visible_count,
    height_from_distance,
)
from .simulator import (
    ConstellationRealization,
    ModeMismatchError,
    SimulationEstimate,
    conditional_ps,
    estimate,
    realization_rng,
    sample_constellation,
)
from .special import (
    ChebyshevRule,
    ConvergenceError,
    chebyshev_rule,
    compositions,
    multinomial,
    regularized_incomplete_beta,
    regularized_lower_gamma,
    regularized_upper_gamma,
)

__version__ = "0.1.0"
