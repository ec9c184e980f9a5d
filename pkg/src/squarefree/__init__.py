"""Statistics of square-free integers: correlations, spectrum, densities.

The package computes and cross-verifies every quantity in sight several
independent ways where possible: exact sieve counts, closed-form prime
products with certified truncation error, and finite Cesaro averages of
the closed forms.
"""
from ._kernels import BACKEND as KERNEL_BACKEND
from .correlations import (
    DENSITY,
    CorrelationValue,
    LagTuple,
    c2_sum_form,
    c2_values,
    empirical_correlation,
    hall_coefficient,
    hall_series_partial,
    level_set_coefficient,
    level_set_density,
    mirsky_correlation,
    sigma1,
    sigma_d,
)
from .averages import (
    GFunction,
    ProgressionQuery,
    cesaro_progression_average,
    cesaro_y2,
    cesaro_y3,
    lambda_count,
    lambda_count_bruteforce,
    progression_average_limit,
    y2,
    y3,
)
from .density import (
    DensityReport,
    PrimeSet,
    alpha,
    dirichlet_convolve,
    error_constant,
    partial_series_checks,
    restricted_count,
    squarefree_decomposition,
)
from .errors import (
    DomainError,
    NotInLambdaError,
    PolicyError,
    PrecisionError,
    RangeError,
)
from .euler import DEFAULT_POLICY, TruncationPolicy
from .kronecker import (
    CharacterSpec,
    GroupElement,
    SpectrumMatchReport,
    character_eval,
    spectrum_match_report,
    translate,
    verify_eigen_relation,
    zero_element,
)
from .sieve import (
    FactorSummary,
    SieveBlock,
    SquarefreeInt,
    factor_summary,
    mobius_range,
    sieve_squarefree,
)
from .spectral import (
    IDENTITY,
    LambdaPoint,
    SpectralAtom,
    approx_error_tail,
    eigen_norm_sq,
    enumerate_lambda,
    inner_product_x_theta,
    lambda_canonicalize,
    lambda_inv,
    lambda_mul,
    parse_phase,
    parseval_partial,
    product_sign,
    spectral_atoms,
)

__version__ = "0.1.0"
