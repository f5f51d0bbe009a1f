"""Differential and algebraic identity residuals.

Everything in this module is a *check*: it returns a residual that should be
zero (or an inequality pair lhs <= rhs) when the geometry behaves as claimed.
Residuals computed from exact jet data carry only rounding error; the two
stationarity residuals (`dmu_residual`, `csl_residual`) need third-order
information and therefore go through central finite differences of the exact
second-order quantities, so their natural noise floor is O(h^2).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .contact import real_inner
from .errors import WrongDimension, ZeroMeanCurvature
from .geom import FrameData, FundamentalData, build_frame, fundamental_forms, induced_metric
from .jets import Jet2, fd_partial

H_MIN = 1e-8


def codazzi_symmetry_residual(sigma_raw: np.ndarray) -> float:
    """Max deviation of the raw cubic form from full symmetry.

    The raw tensor is contracted straight out of the immersion Hessian with
    no symmetrization, so this residual measures an honest geometric identity
    rather than a bookkeeping convention.
    """
    t = np.asarray(sigma_raw, dtype=float)
    if t.ndim != 3 or len(set(t.shape)) != 1:
        raise WrongDimension(f"expected a cubic (n,n,n) tensor, got {t.shape}")
    res = 0.0
    for perm in ((0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
        res = max(res, float(np.max(np.abs(t - np.transpose(t, perm)))))
    return res


def reeb_component_residual(jet: Jet2, frame: FrameData | None = None) -> float:
    """Max |<dF_a, conj(i F)>| over chart directions (Reeb-orthogonality)."""
    if frame is None:
        frame = build_frame(jet)
    vals = [abs(real_inner(jet.jac[a], frame.reeb_vec)) for a in range(jet.chart_dim)]
    return max(vals)


def _mu_covector(jet_fn, point: np.ndarray) -> np.ndarray:
    """eta_a = Re< H_ambient, conj(i dF_a) > in chart components."""
    jet = jet_fn(np.asarray(point, dtype=float))
    frame = build_frame(jet)
    fund = fundamental_forms(jet, frame)
    h_amb = fund.mu @ frame.normals
    return np.array([real_inner(h_amb, 1j * jet.jac[a])
                     for a in range(jet.chart_dim)])


def dmu_residual(family, point: np.ndarray, h: float = 1e-4) -> float:
    """Closedness residual of the mean-curvature 1-form: max |d eta|_ab.

    `family` is an ImmersionFamily (or any callable mapping a chart point to
    a Jet2).  Differentiation is by central differences in the chart.
    """
    jet_fn = getattr(family, "jet", family)
    point = np.asarray(point, dtype=float)
    d = point.shape[0]

    def eta(u: np.ndarray) -> np.ndarray:
        return _mu_covector(jet_fn, u)

    grad = np.stack([fd_partial(eta, point, a, h) for a in range(d)])
    return float(np.max(np.abs(grad - grad.T)))


def csl_residual(family, point: np.ndarray, h: float = 1e-4) -> float:
    """Divergence residual |div_g eta| of the mean-curvature 1-form.

    Vanishing of this divergence (on top of d eta = 0) is the stationarity
    condition; both are third-order in the immersion, hence finite
    differences.  Christoffel symbols come from the same FD pass over the
    induced metric.
    """
    jet_fn = getattr(family, "jet", family)
    point = np.asarray(point, dtype=float)
    d = point.shape[0]

    def eta(u: np.ndarray) -> np.ndarray:
        return _mu_covector(jet_fn, u)

    def metric(u: np.ndarray) -> np.ndarray:
        return induced_metric(jet_fn(u))

    eta0 = eta(point)
    grad = np.stack([fd_partial(eta, point, a, h) for a in range(d)])
    g0 = metric(point)
    dg = np.stack([fd_partial(metric, point, c, h) for c in range(d)])
    ginv = np.linalg.inv(g0)
    # gamma[c,a,b] = (1/2) g^{ce} (d_a g_eb + d_b g_ea - d_e g_ab)
    gamma = 0.5 * (np.einsum("ce,aeb->cab", ginv, dg)
                   + np.einsum("ce,bea->cab", ginv, dg)
                   - np.einsum("ce,eab->cab", ginv, dg))
    cov = grad - np.einsum("cab,c->ab", gamma, eta0)
    return float(abs(np.einsum("ab,ab->", ginv, cov)))


def simons_rhs(fund: FundamentalData, hess_mu: np.ndarray,
               n: int | None = None) -> np.ndarray:
    """Cubic-tensor Laplacian identity right-hand side.

    hess_mu[i, j, k] must hold the frame components mu_{i,jk} of the second
    covariant derivative of the mean curvature vector (symmetric in j, k).
    The returned (n,n,n) array equals the rough Laplacian of the cubic form
    and vanishes identically when the form is parallel and mu is parallel.
    """
    if n is not None and n != fund.n:
        raise WrongDimension(f"n = {n} does not match tensor dimension {fund.n}")
    n = fund.n
    s = fund.sigma
    mu = fund.mu
    hm = np.asarray(hess_mu, dtype=float)
    if hm.shape != (n, n, n):
        raise WrongDimension(f"hess_mu must be ({n},{n},{n}), got {hm.shape}")
    if np.max(np.abs(hm - np.transpose(hm, (0, 2, 1)))) > 1e-9:
        raise WrongDimension("hess_mu must be symmetric in its last two slots")
    eye = np.eye(n)
    out = hm.copy()
    out -= np.einsum("i,jk->ijk", mu, eye)
    out -= np.einsum("j,ik->ijk", mu, eye)
    out += np.einsum("ijt,tks,s->ijk", s, s, mu)
    out += (n + 1) * s
    out += 2.0 * np.einsum("isl,jlt,kts->ijk", s, s, s)
    out -= np.einsum("ijl,lst,kst->ijk", s, s, s)
    out -= np.einsum("jkl,lst,ist->ijk", s, s, s)
    out -= np.einsum("kil,lst,jst->ijk", s, s, s)
    return out


def bochner_quantity(fund: FundamentalData) -> float:
    """Ricci form evaluated on the mean curvature vector, ric(mu, mu)."""
    return float(fund.mu @ fund.ricci @ fund.mu)


def _householder_to_mu(mu: np.ndarray) -> np.ndarray:
    """Rotation R whose first column is +mu/|mu| (columns = adapted frame)."""
    n = mu.shape[0]
    u = mu / np.linalg.norm(mu)
    v = u.copy()
    v[0] -= 1.0
    nv2 = float(v @ v)
    if nv2 < 1e-26:
        return np.eye(n)
    return np.eye(n) - 2.0 * np.outer(v, v) / nv2


@dataclass(frozen=True)
class EqualityCaseFit:
    """Best two-eigenvalue fit of the cubic form in the mu-adapted frame."""
    valid: bool
    lam1: float
    lam2: float
    structural_residual: float
    relation_residual: float


def equality_case_fit(fund: FundamentalData, h_min: float = H_MIN) -> EqualityCaseFit:
    """Fit sigma to the rigid two-eigenvalue shape along mu.

    In the adapted frame (e1 = +mu/|mu|, so the first frame component of mu
    is +|H|) the rigid shape has hat-sigma with the only nonzero entries
    s111 = lam1 and s1jj = lam2 for j >= 2.  structural_residual is the max
    absolute deviation from that shape; relation_residual is
    |1 + lam1 lam2 - lam2^2|, which vanishes exactly on the borderline
    geometries.  The trace identity lam1 + (n-1) lam2 = |H| is automatic in
    this convention whenever the structural residual vanishes.
    """
    n = fund.n
    if np.sqrt(fund.normH2) <= h_min:
        return EqualityCaseFit(False, 0.0, 0.0, 0.0, 0.0)
    rot = _householder_to_mu(fund.mu)
    hat = np.einsum("abc,ai,bj,ck->ijk", fund.sigma, rot, rot, rot)
    lam1 = float(hat[0, 0, 0])
    lam2 = float(np.mean([hat[0, j, j] for j in range(1, n)])) if n > 1 else 0.0
    model = np.zeros_like(hat)
    model[0, 0, 0] = lam1
    for j in range(1, n):
        model[0, j, j] = lam2
        model[j, 0, j] = lam2
        model[j, j, 0] = lam2
    fit = float(np.max(np.abs(hat - model)))
    rel = float(abs(1.0 + lam1 * lam2 - lam2 ** 2))
    return EqualityCaseFit(True, lam1, lam2, fit, rel)


def surface_f(fund: FundamentalData, h_min: float = H_MIN) -> float:
    """The scalar 3*s111 - 2|H| in the mu-adapted frame (surfaces only)."""
    if fund.n != 2:
        raise WrongDimension(f"surface quantity needs n = 2, got n = {fund.n}")
    if np.sqrt(fund.normH2) <= h_min:
        raise ZeroMeanCurvature("surface quantity undefined at |H| = 0")
    rot = _householder_to_mu(fund.mu)
    hat = np.einsum("abc,ai,bj,ck->ijk", fund.sigma, rot, rot, rot)
    return float(3.0 * hat[0, 0, 0] - 2.0 * np.sqrt(fund.normH2))


def _critical_angle(sig: np.ndarray) -> float:
    """Angle maximizing h(t) = sigma(e(t),e(t),e(t)) for a 2x2x2 tensor.

    Writing the rotated 111-entry as a trig polynomial
    h(t) = A cos t + B sin t + C cos 3t + D sin 3t, the returned angle is a
    grid argmax refined by Newton on h'.  At any critical angle the rotated
    112-entry vanishes, which is the normalization the relation check needs.
    """
    s111, s112 = sig[0, 0, 0], sig[0, 0, 1]
    s122, s222 = sig[0, 1, 1], sig[1, 1, 1]
    a = 0.75 * (s111 + s122)
    b = 0.75 * (s112 + s222)
    c = 0.25 * (s111 - 3.0 * s122)
    d = 0.25 * (3.0 * s112 - s222)

    def h(t):
        return a * np.cos(t) + b * np.sin(t) + c * np.cos(3 * t) + d * np.sin(3 * t)

    def dh(t):
        return -a * np.sin(t) + b * np.cos(t) - 3 * c * np.sin(3 * t) + 3 * d * np.cos(3 * t)

    def d2h(t):
        return -a * np.cos(t) - b * np.sin(t) - 9 * c * np.cos(3 * t) - 9 * d * np.sin(3 * t)

    grid = np.linspace(0.0, 2.0 * np.pi, 720, endpoint=False)
    t = float(grid[np.argmax(h(grid))])
    for _ in range(40):
        g1, g2 = dh(t), d2h(t)
        if abs(g2) < 1e-14:
            break
        step = g1 / g2
        t -= step
        if abs(step) < 1e-15:
            break
    return t


def b2_relation_residual(fund: FundamentalData, h_min: float = H_MIN) -> float:
    """Residual |1 + s111 s122 - s122^2| in a critical frame (surfaces only).

    The frame is rotated so the 111-entry of the cubic form is maximal, which
    forces the 112-entry to zero; in that gauge the displayed combination
    equals the frame-invariant 1 + sum of principal normal determinants.
    """
    if fund.n != 2:
        raise WrongDimension(f"relation check needs n = 2, got n = {fund.n}")
    if np.sqrt(fund.normH2) <= h_min:
        raise ZeroMeanCurvature("relation check undefined at |H| = 0")
    t = _critical_angle(fund.sigma)
    cs, sn = np.cos(t), np.sin(t)
    rot = np.array([[cs, -sn], [sn, cs]])
    hat = np.einsum("abc,ai,bj,ck->ijk", fund.sigma, rot, rot, rot)
    return float(abs(1.0 + hat[0, 0, 0] * hat[0, 1, 1] - hat[0, 1, 1] ** 2))


def principal_determinant_sum(fund: FundamentalData) -> float:
    """1 + sum_k det(sigma[:, :, k]); frame-invariant cross-check for n = 2."""
    if fund.n != 2:
        raise WrongDimension(f"determinant sum needs n = 2, got n = {fund.n}")
    return float(1.0 + sum(np.linalg.det(fund.sigma[:, :, k]) for k in range(2)))


def cdk_matrix_bound(fund: FundamentalData) -> tuple[float, float]:
    """Commutator/overlap bound: returns (lhs, (3/2)|B|^4).

    lhs = sum_{ij} ||[A_i, A_j]||_F^2 + sum_{ij} <A_i, A_j>^2 where A_k is
    the k-th slice of the cubic form.  The bound holds for any family of
    symmetric matrices, not only geometric ones.
    """
    s = fund.sigma
    comm = np.einsum("iak,kbj->iabj", s, s) - np.einsum("jak,kbi->iabj", s, s)
    lhs = float(np.sum(comm * comm))
    overlap = np.einsum("iab,jab->ij", s, s)
    lhs += float(np.sum(overlap * overlap))
    return lhs, 1.5 * fund.normB2 ** 2


def main0_chain(sigma0: np.ndarray) -> list[float]:
    """Monotone chain of lower bounds refining |traceless B|^2.

    Returns [L0..L5] with L0 = |sigma0|^2 and each later entry obtained from
    the previous one by a Cauchy-Schwarz step, ending at
    L5 = (n+2)/(n-1) * s111^2.  Every consecutive pair must satisfy
    L_k >= L_{k+1}; the chain is what turns the full-norm hypothesis into a
    single-entry statement.
    """
    s = np.asarray(sigma0, dtype=float)
    n = s.shape[0]
    if n < 2:
        raise WrongDimension("chain needs n >= 2")
    t111 = s[0, 0, 0] ** 2
    t11j = float(sum(s[0, 0, j] ** 2 for j in range(1, n)))
    t1jj = float(sum(s[0, j, j] ** 2 for j in range(1, n)))
    t1jk = float(sum(s[0, j, k] ** 2
                     for j in range(1, n) for k in range(j + 1, n)))
    rest_iii = float(sum(s[i, i, i] ** 2 for i in range(1, n)))
    rest_ijj = float(sum(s[i, j, j] ** 2
                         for i in range(1, n) for j in range(1, n) if i != j))
    l0 = float(np.sum(s * s))
    l1 = t111 + 3 * t11j + 3 * t1jj + 6 * t1jk + rest_iii + 3 * rest_ijj
    l2 = t111 + 3 * t11j + 3 * t1jj + 6 * t1jk + (3.0 / (n + 1)) * t11j
    l3 = ((n + 2.0) / n) * (t111 + t1jj) + 3 * ((n + 2.0) / (n + 1)) * t11j + 6 * t1jk
    l4 = ((n + 2.0) / n) * (t111 + 2 * t11j + t1jj + 2 * t1jk)
    l5 = ((n + 2.0) / (n - 1)) * t111
    return [l0, l1, l2, l3, l4, l5]


def ricci_lower_bound(fund: FundamentalData, h_min: float = H_MIN) -> tuple[float, float]:
    """Normalized ric(mu, mu)/|H|^2 and its algebraic lower bound.

    The bound uses only the traceless norm and |H|, and holds for an
    arbitrary symmetric cubic tensor, so it doubles as a property test on
    random inputs.
    """
    n = fund.n
    if np.sqrt(fund.normH2) <= h_min:
        raise ZeroMeanCurvature("normalized Ricci bound undefined at |H| = 0")
    s0sq = float(np.sum(fund.sigma0 * fund.sigma0))
    h = np.sqrt(fund.normH2)
    lhs = bochner_quantity(fund) / fund.normH2
    rhs = ((n - 1.0)
           - ((n - 2.0) / (n + 2.0)) * np.sqrt((n - 1.0) / (n + 2.0) * s0sq) * h
           + 2.0 * (n - 1.0) / (n + 2.0) ** 2 * fund.normH2
           - n / (n + 2.0) * s0sq)
    return lhs, float(rhs)
