"""
Tour of the flat torus family
=============================

Build one member of the flat Legendrian surface family in S^5, read its
curvature off an exact 2-jet, and compare against the closed forms.
"""
import numpy as np

from cslgeo import (calabi_torus, fundamental_forms, gauss_curvature,
                    induced_metric, oracle, threshold_basic)

# the family is cut out by r1^2 + r2^2 = r3^2 + r4^2 = 1
fam = calabi_torus(0.6, 0.8, 0.3, np.sqrt(1 - 0.09))
pt = np.array([0.9, 2.2])
jet = fam.jet(pt)

# the induced metric is flat and diagonal: diag(1, r1^2), independent of pt
print("induced metric\n", induced_metric(jet))

# second fundamental form, mean curvature, norms
fund = fundamental_forms(jet)
print("\nsigma_111 =", fund.sigma[0, 0, 0], " (closed form r2/r1 - r1/r2 =",
      0.8 / 0.6 - 0.6 / 0.8, ")")
print("mu        =", fund.mu)
print("|B|^2     =", fund.normB2, "  |H|^2 =", fund.normH2)

# two structural facts hold across the whole family:
# the surface is intrinsically flat, and |B|^2 - |H|^2 = 2
print("\ngauss curvature  =", gauss_curvature(fund))
print("|B|^2 - |H|^2    =", fund.normB2 - fund.normH2)

# ... which means every member sits exactly on the basic pinching threshold
print("threshold gap    =", threshold_basic(2, fund.normH2) - fund.normB2)

# the closed-form oracle packages all of this
ora = oracle(fam.spec)
print("\noracle agrees: max |sigma - closed form| =",
      np.max(np.abs(fund.sigma - ora.sigma_expected)))

# the minimal member has r1 = sqrt(2/3), r3 = sqrt(1/2)
mini = calabi_torus(np.sqrt(2 / 3), np.sqrt(1 / 3), np.sqrt(0.5), np.sqrt(0.5))
fmin = fundamental_forms(mini.jet(pt))
print("\nminimal member:  |H|^2 =", fmin.normH2, "  |B|^2 =", fmin.normB2)
