"""
Farthest state from the rank-k states
=====================================

The farthest state always has the form I_m/m ⊕ O for some m > k, so a scan
over m finds it. Under the trace norm it is the maximally mixed state; under
the operator norm it need not be.
"""

from lowrankdm import OPERATOR, TRACE, farthest_search

for spec in (TRACE, OPERATOR):
    rep = farthest_search(4, 2, spec)
    print(spec)
    for m, d in rep.candidate_distances.items():
        mark = "  <- farthest" if m == rep.argmax_m else ""
        print(f"  m={m}: {d:.6f}{mark}")

# Under the operator norm the winner switches to m = n once n >= k(k+1).
print()
print(" n  argmax_m  (k=3, operator norm)")
for n in range(4, 15):
    print(f"{n:2d}  {farthest_search(n, 3, OPERATOR).argmax_m:8d}")
