"""
Walking the equality locus
==========================

The warped-product family attains the basic pinching bound exactly while the
radius stays below sqrt(n/(n+1)), and drops strictly under it beyond.  The
classifier sees the transition, and the two-eigenvalue fit recovers the
closed-form spectrum on the equality side.
"""
import math

import numpy as np

from cslgeo import (calabi_product, classify, equality_case_fit,
                    fundamental_forms)

n = 3
crit = math.sqrt(n / (n + 1.0))
print(f"n = {n}: critical radius sqrt(n/(n+1)) = {crit:.6f}\n")

print(f"{'r1':>6} {'|B|^2':>10} {'|H|^2':>10} {'margin_basic':>13} {'flag':>5}")
for r1 in np.linspace(0.3, 0.95, 14):
    fam = calabi_product(n, float(r1), math.sqrt(1 - r1 * r1))
    fund = fundamental_forms(fam.jet(fam.representative_point()))
    report = classify([fund], n)
    m = report.entry("basic").pointwise_margin_min
    flag = "  ==" if report.equality_points else "   <"
    print(f"{r1:>6.3f} {fund.normB2:>10.5f} {fund.normH2:>10.5f} {m:>13.2e} {flag:>5}")

# on the equality side the cubic form has exactly two eigenvalues:
# lam1 = q - 1/q on the mean-curvature axis and lam2 = q transverse, q = r2/r1
r1 = 0.8
q = math.sqrt(1 - r1 * r1) / r1
fam = calabi_product(n, r1, math.sqrt(1 - r1 * r1))
fit = equality_case_fit(fundamental_forms(fam.jet(fam.representative_point())))
print(f"\nfit at r1 = {r1}:")
print(f"  lam1 = {fit.lam1:.9f}   closed form q - 1/q = {q - 1 / q:.9f}")
print(f"  lam2 = {fit.lam2:.9f}   closed form q       = {q:.9f}")
print(f"  structural residual = {fit.structural_residual:.2e}")
print(f"  relation |1 + lam1 lam2 - lam2^2| = {fit.relation_residual:.2e}")

# bisect the flag flip onto the critical radius
lo, hi = crit - 0.05, crit + 0.05
for _ in range(40):
    mid = 0.5 * (lo + hi)
    fam = calabi_product(n, mid, math.sqrt(1 - mid * mid))
    fund = fundamental_forms(fam.jet(fam.representative_point()))
    if classify([fund], n).entry("basic").pointwise_margin_min < -1e-10:
        hi = mid
    else:
        lo = mid
print(f"\nsign change bracketed at r1 = {0.5 * (lo + hi):.9f}"
      f"  (sqrt(n/(n+1)) = {crit:.9f})")
