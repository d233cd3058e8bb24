"""
Checking the closed forms numerically
=====================================

The minimum oracle searches over rank-k states directly and the maximum
oracle searches over spectra. Neither knows the candidate family.
"""

import numpy as np

from lowrankdm import (
    NormSpec,
    OracleConfig,
    distance_to_low_rank,
    farthest_search,
    oracle_max_distance,
    oracle_min_distance,
    random_density_matrix,
    validate_density,
)

cfg = OracleConfig(restarts=4, seed=1)
rng = np.random.default_rng(0)
X = validate_density(random_density_matrix(4, rng))
lam = np.linalg.eigvalsh(X.matrix)

print("minimum distance, n=4, k=2")
for spec in (NormSpec.schatten(1), NormSpec.schatten(3), NormSpec.kyfan(2)):
    closed = distance_to_low_rank(lam, 2, spec)
    found = oracle_min_distance(X, 2, spec, cfg).value
    print(f"  {str(spec):>12}: closed form {closed:.10f}  oracle {found:.10f}")

print("maximum distance, n=5, k=3")
for spec in (NormSpec.schatten(1), NormSpec.schatten(5), NormSpec.kyfan(3)):
    res = oracle_max_distance(5, 3, spec, cfg)
    best = farthest_search(5, 3, spec).max_distance
    print(f"  {str(spec):>12}: search {best:.8f}  oracle {res.value:.8f}  at {np.round(res.eigs, 3)}")
