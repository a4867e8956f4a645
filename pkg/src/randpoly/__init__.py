"""Random-polynomial real-zero statistics and the persistence exponent.

The package has three layers:

* coefficient models and zero counting (``polycore``, ``rootcount``,
  ``experiments``) — exact integer Sturm counts, a certified numeric
  scanner, Monte Carlo estimates of no-zero probabilities, and power-law
  exponent fits across degree ladders;
* stationary Gaussian processes (``gp``, ``persistence``) — exact
  sampling of the limiting sech-correlation process and its relatives,
  one-sided survival probabilities, and the matching decay-exponent
  estimator, with importance splitting for deep tails;
* analytic certificates (``analytic``) — the mean zero count by
  quadrature and the proven two-sided window for the decay exponent.
"""

__version__ = "0.1.0"

from .polycore import (  # noqa: E402
    CoefficientDistribution,
    Polynomial,
    poly_corr,
    poly_std,
    sample_coefficients,
)
from .rootcount import (  # noqa: E402
    GridSpec,
    ZeroCountResult,
    has_no_real_zero,
    no_real_zero_rows,
    numeric_count,
    numeric_count_rows,
    sturm_count,
    sturm_count_interval,
)
from .gp import (  # noqa: E402
    EmbeddingError,
    GridPath,
    PathSpec,
    covariance,
    fourier_cos_transform,
    sample_ou,
    sample_path,
    sample_y_alpha,
    spectral_density,
)
from .persistence import (  # noqa: E402
    CurvePoint,
    LevelExtinctionError,
    MCEstimate as PersistEstimate,
    PersistenceCurve,
    estimate_b,
    ou_persist_continuum,
    ou_persist_exact,
    persist_prob,
    refinement_check,
    splitting_persist,
    wilson_interval,
)
from .analytic import (  # noqa: E402
    CertificationError,
    KacResult,
    LemmaBConstants,
    QuadratureError,
    certified_upper_bound,
    discrete_slepian_check,
    en_asymptote,
    exponent_bounds,
    kac_en,
    lemma_b_constants,
    tridiag_det,
    vn_asymptote,
)
from .experiments import (  # noqa: E402
    ConfigError,
    ExperimentConfig,
    ExponentFit,
    MCEstimate,
    ZeroHistogram,
    estimate_en_vn,
    estimate_pn,
    estimate_pnk,
    fit_exponent,
    run_ladder,
    zero_histogram,
)

__all__ = [
    "__version__",
    # polynomials & counting
    "CoefficientDistribution", "Polynomial", "poly_corr", "poly_std",
    "sample_coefficients", "GridSpec", "ZeroCountResult", "has_no_real_zero",
    "no_real_zero_rows", "numeric_count", "numeric_count_rows", "sturm_count",
    "sturm_count_interval",
    # Gaussian processes & persistence
    "EmbeddingError", "GridPath", "PathSpec", "covariance",
    "fourier_cos_transform", "sample_ou", "sample_path", "sample_y_alpha",
    "spectral_density", "CurvePoint", "LevelExtinctionError",
    "PersistEstimate", "PersistenceCurve", "estimate_b",
    "ou_persist_continuum", "ou_persist_exact", "persist_prob",
    "refinement_check", "splitting_persist", "wilson_interval",
    # analytic certificates
    "CertificationError", "KacResult", "LemmaBConstants", "QuadratureError",
    "certified_upper_bound", "discrete_slepian_check", "en_asymptote",
    "exponent_bounds", "kac_en", "lemma_b_constants", "tridiag_det",
    "vn_asymptote",
    # experiments
    "ConfigError", "ExperimentConfig", "ExponentFit", "MCEstimate",
    "ZeroHistogram", "estimate_en_vn", "estimate_pn", "estimate_pnk",
    "fit_exponent", "run_ladder", "zero_histogram",
]
