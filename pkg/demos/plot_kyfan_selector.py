"""
Ky Fan norms: which m is farthest
=================================

Compare the case-table prediction for the farthest m against an exhaustive
scan. The table is exact outside the range r/2 < k <= r. Inside it, it
predicts m = n, but a smaller m can be strictly farther.
"""

from fractions import Fraction

from lowrankdm import NormSpec, farthest_search, kyfan_candidate_closed_form, kyfan_optimal_m

sel = kyfan_optimal_m(9, 5, 4)
print(f"n=9, k=5, r=4: case {sel.case}, m={sel.predicted_m}, distance {sel.predicted_distance:.6f}")

# n=6, k=3, r=3 is the smallest instance where the prediction m = n fails.
sel = kyfan_optimal_m(6, 3, 3, verify=False)
rep = farthest_search(6, 3, NormSpec.kyfan(3))
print(f"n=6, k=3, r=3: predicted m={sel.predicted_m}, search m={rep.argmax_m}")
for m, d in rep.candidate_distances.items():
    print(f"  m={m}: {d:.6f}  closed form {kyfan_candidate_closed_form(m, 3, 3):.6f}")
print("exact values:", Fraction(8, 15), "at m=5 vs", Fraction(1, 2), "at m=6")

# Count the failures for n <= 20.
bad = 0
for n in range(2, 21):
    for k in range(1, n):
        for r in range(1, n + 1):
            sel = kyfan_optimal_m(n, k, r, verify=False)
            rep = farthest_search(n, k, NormSpec.kyfan(r))
            bad += sel.predicted_m not in rep.ties
print("triples with n <= 20 where the prediction is not a maximiser:", bad)
