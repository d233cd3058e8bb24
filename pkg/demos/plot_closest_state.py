"""
Closest low-rank state
======================

Truncate a random density matrix to rank k and spread the discarded weight
evenly over the kept eigenvalues.
"""

import numpy as np

from lowrankdm import NormSpec, closest_rank_k, random_density_matrix, validate_density

rng = np.random.default_rng(3)
X = validate_density(random_density_matrix(5, rng))
print("eigenvalues of X:", np.round(np.linalg.eigvalsh(X.matrix)[::-1], 4))

# The minimiser does not depend on the norm, only the distance does.
for spec in (NormSpec.schatten(1), NormSpec.schatten(2), NormSpec.schatten(np.inf), NormSpec.kyfan(2)):
    res = closest_rank_k(X, 2, spec)
    print(f"{str(spec):>14}  distance {res.distance:.6f}")

res = closest_rank_k(X, 2, NormSpec.schatten(1))
print("gamma:", round(res.gamma, 6))
print("eigenvalues of Y:", np.round(np.linalg.eigvalsh(res.Y.matrix)[::-1], 4))
print("residual spectrum:", np.round(res.residual_spectrum, 4))

# Y has rank 2 and trace 1.
print("rank of Y:", np.linalg.matrix_rank(res.Y.matrix, tol=1e-10))
