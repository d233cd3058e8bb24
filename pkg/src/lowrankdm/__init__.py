"""Closest low-rank density matrices under unitary similarity invariant norms."""

from .approx import ApproxResult, closest_rank_k, distance_to_low_rank, gamma_shift, residual_spectrum
from .errors import LowRankError, NumericalError, ValidationError
from .farthest import (
    Counterexample,
    FarthestReport,
    KyFanSelector,
    candidate_distance,
    farthest_search,
    kyfan_candidate_closed_form,
    kyfan_optimal_m,
    operator_norm_farthest,
    schatten_counterexample,
    schatten_crossing,
    schatten_is_always_maxmixed,
    schatten_maxmixed_distance,
    schatten_maxmixed_power,
)
from .majorization import majorizes, usi_dominates
from .norms import FROBENIUS, OPERATOR, TRACE, NormSpec, norm_of_matrix, norm_of_values, norm_power_of_values, parse_norm
from .oracle import OracleConfig, oracle_max_distance, oracle_min_distance
from .spectra import (
    DensityMatrix,
    Spectrum,
    Tolerances,
    hermitian_singular_values,
    random_density_matrix,
    random_unitary,
    spectral_decompose,
    validate_density,
)

__version__ = "0.1.0"
