"""
Schatten exponents where the farthest state changes
===================================================

For n=14 and k=9 the optimal m steps down from 14 to 10 as p grows. The
switch points are the roots of d_m(p) = d_{m-1}(p).
"""

import numpy as np

from lowrankdm import (
    NormSpec,
    farthest_search,
    schatten_counterexample,
    schatten_crossing,
    schatten_is_always_maxmixed,
)

for m in (14, 13, 12, 11):
    p = schatten_crossing(14, 9, m, m - 1)
    print(f"m={m} and m={m - 1} tie at p = {p:.6f}")

print()
for p in np.linspace(1, 10, 19):
    print(f"p={p:5.2f}  argmax_m={farthest_search(14, 9, NormSpec.schatten(p)).argmax_m}")

# The maximally mixed state is always farthest only for p in {1} ∪ [2, 4].
print()
for p in (1.5, 3, 5):
    ce = schatten_counterexample(p)
    verdict = "always farthest" if schatten_is_always_maxmixed(p) else "not always farthest"
    print(f"p={p}: I/n {verdict}", end="")
    if ce is not None:
        print(f"; e.g. n={ce.n}, k={ce.k}: {ce.distance_x:.6f} > {ce.distance_maxmixed:.6f}")
    else:
        print()
