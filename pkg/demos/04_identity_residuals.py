"""
Residual checks across the zoo
==============================

Every identity the library verifies returns a residual that should sit at
rounding level on genuine geometries.  This script tabulates them for each
built-in family at a representative chart point, then shows what a failure
looks like on a deliberately non-Legendrian curve.
"""
import math

import numpy as np

from cslgeo import (Jet2, calabi_product, calabi_torus, clifford_torus,
                    codazzi_symmetry_residual, csl_residual, dmu_residual,
                    fundamental_forms, legendrian_residual,
                    reeb_component_residual, simons_rhs, totally_geodesic)

families = [
    totally_geodesic(3),
    calabi_torus(0.6, 0.8, 0.6, 0.8),
    calabi_product(3, 0.8, 0.6),
    clifford_torus(2),
]

print(f"{'family':<22} {'legendrian':>11} {'codazzi':>9} {'reeb':>9}"
      f" {'simons':>9} {'d mu':>9} {'div':>9}")
for fam in families:
    pt = fam.representative_point()
    jet = fam.jet(pt)
    fund = fundamental_forms(jet)
    n = fund.n
    simons = float(np.max(np.abs(simons_rhs(fund, np.zeros((n, n, n))))))
    print(f"{fam.kind + f'-n{n}':<22}"
          f" {legendrian_residual(jet):>11.1e}"
          f" {codazzi_symmetry_residual(fund.sigma_raw):>9.1e}"
          f" {reeb_component_residual(jet):>9.1e}"
          f" {simons:>9.1e}"
          f" {dmu_residual(fam, pt):>9.1e}"
          f" {csl_residual(fam, pt):>9.1e}")

# negative control: F(u) = (cos u, sin u e^{iu}, 0) lies on S^5 but its
# tangent has a nonzero contact component, so the first check must fire
u = math.pi / 4
e = complex(math.cos(u), math.sin(u))
bad = Jet2(value=np.array([math.cos(u), math.sin(u) * e, 0.0], dtype=complex),
           jac=np.array([[-math.sin(u), (math.cos(u) + 1j * math.sin(u)) * e, 0.0]]),
           hess=np.zeros((1, 1, 3), dtype=complex))
print("\nnon-Legendrian curve: legendrian residual =",
      legendrian_residual(bad), "(should be far above any tolerance)")
