"""
Pinching thresholds side by side
================================

The package ships five upper bounds on |B|^2.  This script prints them over
a range of dimensions and shows two structural facts: the one-parameter
eps-family interpolates up to the curvature-adapted bound, and the minimal
branch changes formula at n = 17.
"""
import math

import numpy as np

from cslgeo import (threshold_basic, threshold_eps, threshold_main,
                    threshold_main1, threshold_main3, threshold_tg)

h2 = 1.0
print(f"thresholds at |H|^2 = {h2}")
print(f"{'n':>3} {'basic':>10} {'main':>10} {'main1':>10} {'main3':>10} {'tg':>10}")
for n in (3, 4, 5, 8, 12, 17, 26, 40):
    print(f"{n:>3} {threshold_basic(n, h2):>10.5f} {threshold_main(n, h2):>10.5f}"
          f" {threshold_main1(n, h2):>10.5f} {threshold_main3(n):>10.5f}"
          f" {threshold_tg(n, h2):>10.5f}")

# the eps family: threshold_eps(n, h2, eps) is maximized at
# eps* = sqrt(h2 / (4n + h2)), where it touches threshold_basic
n = 5
star = math.sqrt(h2 / (4 * n + h2))
grid = np.linspace(0.01, 1.2, 500)
vals = [threshold_eps(n, h2, float(e)) for e in grid]
print(f"\nn = {n}: sup over eps grid = {max(vals):.9f}")
print(f"         threshold_basic   = {threshold_basic(n, h2):.9f}")
print(f"         argmax eps = {grid[int(np.argmax(vals))]:.4f}, eps* = {star:.4f}")
# eps = 1 recovers the linear main bound bit for bit
assert threshold_eps(n, h2, 1.0) == threshold_main(n, h2)

# minimal case: the 2(n+1)/3 line is overtaken at n = 17
print("\nminimal-case branch (main3):")
for n in (15, 16, 17, 18, 26):
    linear = 2 * (n + 1) / 3
    root = 2 * (math.sqrt(3 * n - 2) - 1)
    picked = threshold_main3(n)
    print(f"  n={n:>2}: 2(n+1)/3 = {linear:.4f}   2(sqrt(3n-2)-1) = {root:.4f}"
          f"   used -> {picked:.4f}")
