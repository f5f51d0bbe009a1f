"""Induced metric, orthonormal frames and fundamental forms at a chart point.

All second-order data of a Legendrian immersion F: U -> S^{2n+1} is read off
a single exact 2-jet.  The frame comes from modified Gram-Schmidt on the
coordinate tangents dF/du_a in fixed chart order, so frame signs are pinned
by the chart; the normal frame is nu_k = i E_k and the second fundamental
form is the cubic tensor

    sigma_ijk = sum_{a,b} e_i^a e_j^b Re< d2F/du_a du_b, conj(i E_k) >.

The pairing with i E_k annihilates tangential and radial parts of the
ambient second derivative, so no Christoffel correction is needed.  Ricci
curvature follows from the Gauss equation of the unit sphere.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations
from typing import Optional

import numpy as np

from .contact import check_on_sphere, real_inner
from .errors import DegenerateMetric, WrongDimension
from .jets import Jet2

__all__ = [
    "EIG_TOL",
    "FrameData",
    "FundamentalData",
    "induced_metric",
    "build_frame",
    "fundamental_forms",
    "gauss_curvature",
    "ric_jh",
]

EIG_TOL = 1e-12


@dataclass(frozen=True)
class FrameData:
    """Orthonormal tangent frame and Legendrian normal frame at one point.

    frame_coeffs[i, a] expresses E_i = sum_a frame_coeffs[i, a] * dF/du_a;
    it is lower triangular by construction.  tangents/normals are stacked
    ambient vectors of shape (n, m); reeb_vec is i*F.
    """

    metric: np.ndarray
    frame_coeffs: np.ndarray
    tangents: np.ndarray
    normals: np.ndarray
    reeb_vec: np.ndarray


@dataclass(frozen=True)
class FundamentalData:
    """Pointwise curvature data of a Legendrian immersion.

    sigma is the fully symmetrized cubic form, sigma_raw the tensor before
    symmetrization (its asymmetry is a correctness residual, see
    identities.codazzi_symmetry_residual).  sigma0 is the trace-free part,
    mu the mean curvature covector mu_k = sum_i sigma_iik.  gauss_curv is
    populated only for surfaces (n = 2).
    """

    n: int
    sigma: np.ndarray
    sigma_raw: np.ndarray
    sigma0: np.ndarray
    mu: np.ndarray
    normB2: float
    normH2: float
    ricci: np.ndarray
    gauss_curv: Optional[float]


def induced_metric(jet: Jet2) -> np.ndarray:
    """First fundamental form g_ab = Re< dF_a, conj(dF_b) >."""
    g = np.real(jet.jac @ np.conj(jet.jac.T))
    return 0.5 * (g + g.T)


def build_frame(jet: Jet2, eig_tol: float = EIG_TOL) -> FrameData:
    """Orthonormalize the coordinate tangents (modified Gram-Schmidt).

    Raises DegenerateMetric when the smallest eigenvalue of g falls below
    ``eig_tol`` (e.g. at spherical-coordinate poles).  The eigenvalue, not
    the determinant, is the right gate: a high-dimensional chart with many
    moderately small diagonal entries has a tiny determinant while every
    direction is still well resolved.
    """
    g = induced_metric(jet)
    d = g.shape[0]
    eig_min = float(np.linalg.eigvalsh(g)[0])
    if eig_min < eig_tol:
        raise DegenerateMetric(
            f"min eigenvalue of g = {eig_min:.3e} below {eig_tol:.1e}")

    tangents = np.zeros((d, jet.ambient_dim), dtype=complex)
    coeffs = np.zeros((d, d))
    for i in range(d):
        v = jet.jac[i].copy()
        c = np.zeros(d)
        c[i] = 1.0
        for j in range(i):
            proj = real_inner(v, tangents[j])
            v = v - proj * tangents[j]
            c = c - proj * coeffs[j]
        nrm = np.sqrt(real_inner(v, v))
        if nrm < np.sqrt(eig_tol):
            raise DegenerateMetric(f"tangent {i} degenerates under Gram-Schmidt")
        tangents[i] = v / nrm
        coeffs[i] = c / nrm
    return FrameData(metric=g, frame_coeffs=coeffs, tangents=tangents,
                     normals=1j * tangents, reeb_vec=1j * jet.value)


def _symmetrize_canonical(t: np.ndarray) -> np.ndarray:
    """Full symmetrization with bitwise-identical entries per index multiset."""
    n = t.shape[0]
    out = np.empty_like(t)
    for idx in combinations_with_replacement(range(n), 3):
        perms = set(permutations(idx))
        val = sum(t[p] for p in sorted(perms)) / len(perms)
        for p in perms:
            out[p] = val
    return out


def _assemble(sigma_raw: np.ndarray) -> FundamentalData:
    n = sigma_raw.shape[0]
    sigma = _symmetrize_canonical(sigma_raw)
    mu = np.einsum("iik->k", sigma)

    sigma0 = np.empty_like(sigma)
    for idx in combinations_with_replacement(range(n), 3):
        i, j, k = idx
        trace_part = (mu[i] * (j == k) + mu[j] * (i == k) + mu[k] * (i == j)) / (n + 2)
        val = sigma[idx] - trace_part
        for p in set(permutations(idx)):
            sigma0[p] = val

    norm_b2 = float(np.sum(sigma * sigma))
    norm_h2 = float(mu @ mu)
    ricci = ((n - 1) * np.eye(n)
             + np.einsum("ijk,k->ij", sigma, mu)
             - np.einsum("ikl,jkl->ij", sigma, sigma))
    ricci = 0.5 * (ricci + ricci.T)
    gauss = (2.0 + norm_h2 - norm_b2) / 2.0 if n == 2 else None
    return FundamentalData(n=n, sigma=sigma, sigma_raw=sigma_raw, sigma0=sigma0,
                           mu=mu, normB2=norm_b2, normH2=norm_h2,
                           ricci=ricci, gauss_curv=gauss)


def fundamental_forms(jet: Jet2, frame: Optional[FrameData] = None) -> FundamentalData:
    """Second fundamental form, mean curvature and Gauss-equation Ricci."""
    check_on_sphere(jet.value)
    if frame is None:
        frame = build_frame(jet)
    # Re< d2F_ab, conj(nu_k) >, then contract chart indices into the frame.
    pair = np.real(np.einsum("abm,km->abk", jet.hess, np.conj(frame.normals)))
    sigma_raw = np.einsum("ia,jb,abk->ijk", frame.frame_coeffs,
                          frame.frame_coeffs, pair)
    return _assemble(sigma_raw)


def fundamental_from_sigma(sigma: np.ndarray) -> FundamentalData:
    """Assemble FundamentalData from a bare cubic tensor.

    Lets the tensor-algebra checks (traceless decomposition, Ricci bound,
    commutator bound) run on synthetic tensors that never came from an
    immersion.  The input is symmetrized on store like the geometric path.
    """
    sigma = np.asarray(sigma, dtype=float)
    if sigma.ndim != 3 or len(set(sigma.shape)) != 1:
        raise WrongDimension(f"expected a cubic (n,n,n) tensor, got {sigma.shape}")
    return _assemble(sigma)


def gauss_curvature(fund: FundamentalData) -> float:
    """Gauss curvature of a Legendrian surface: (2 + |H|^2 - |B|^2) / 2."""
    if fund.n != 2:
        raise WrongDimension(f"gauss_curvature needs n = 2, got n = {fund.n}")
    assert fund.gauss_curv is not None
    return fund.gauss_curv


def ric_jh(fund: FundamentalData) -> float:
    """Ric(JH, JH), the quantity whose sign drives the rigidity argument."""
    return float(fund.mu @ fund.ricci @ fund.mu)
