"""Ambient contact structure of the unit sphere S^{2n+1} in C^{n+1}.

Points and tangent vectors are complex (n+1)-vectors; the real inner
product is Re<u, conj(v)>, the complex structure J is multiplication by i,
the Reeb field at x is i*x, and the contact form is alpha_x(v) = <v, J x>.
A Legendrian immersion pulls alpha back to zero; ``legendrian_residual``
measures the failure of that, together with the symmetry of the pulled-back
Hermitian form, directly from an exact 2-jet.
"""

from __future__ import annotations

import numpy as np

from .errors import OffSphere
from .jets import Jet2

__all__ = [
    "ON_SPHERE_TOL",
    "real_inner",
    "apply_j",
    "reeb",
    "contact_alpha",
    "check_on_sphere",
    "legendrian_residual",
]

ON_SPHERE_TOL = 1e-10


def real_inner(u: np.ndarray, v: np.ndarray) -> float:
    """Real inner product of C^m vectors viewed as R^{2m} vectors."""
    return float(np.real(np.sum(u * np.conj(v))))


def apply_j(v: np.ndarray) -> np.ndarray:
    """Ambient complex structure: multiplication by i (exactly J^2 = -1)."""
    return 1j * np.asarray(v)


def check_on_sphere(x: np.ndarray, tol: float = ON_SPHERE_TOL) -> None:
    r = abs(float(np.linalg.norm(x)) - 1.0)
    if r > tol:
        raise OffSphere(f"|x| deviates from 1 by {r:.3e} (tol {tol:.1e})")


def reeb(x: np.ndarray) -> np.ndarray:
    """Reeb vector field of the standard contact form, evaluated at x."""
    check_on_sphere(x)
    return 1j * np.asarray(x)


def contact_alpha(x: np.ndarray, v: np.ndarray) -> float:
    """Contact form alpha_x(v) = <v, i x> with the real inner product.

    Normalized so that alpha(Reeb) = 1 on the unit sphere.
    """
    check_on_sphere(x)
    return real_inner(v, 1j * np.asarray(x))


def legendrian_residual(jet: Jet2) -> float:
    """Max violation of the first-order Legendrian conditions at one point.

    Two families of conditions, both expressed through the tangent jets:
    sum_a dF^a_i conj(F^a) = 0 for every chart direction i, and the matrix
    P_ij = sum_a dF^a_i conj(dF^a_j) symmetric (its skew part is the
    pulled-back symplectic form).  Returns the largest absolute violation.
    """
    check_on_sphere(jet.value)
    first = jet.jac @ np.conj(jet.value)
    p = jet.jac @ np.conj(jet.jac.T)
    skew = p - p.T
    res = float(np.max(np.abs(first))) if first.size else 0.0
    if skew.size:
        res = max(res, float(np.max(np.abs(skew))))
    return res
