"""Identity residuals: Codazzi, stationarity, Simons, equality fits, bounds."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cslgeo.errors import WrongDimension, ZeroMeanCurvature
from cslgeo.geom import fundamental_forms, fundamental_from_sigma
from cslgeo.identities import (b2_relation_residual, bochner_quantity,
                               cdk_matrix_bound, codazzi_symmetry_residual,
                               csl_residual, dmu_residual, equality_case_fit,
                               main0_chain, principal_determinant_sum,
                               reeb_component_residual, ricci_lower_bound,
                               simons_rhs, surface_f)
from cslgeo.zoo import (calabi_product, calabi_torus, clifford_torus,
                        totally_geodesic)

FAMILIES = [
    totally_geodesic(2),
    totally_geodesic(3),
    calabi_torus(0.6, 0.8, 0.6, 0.8),
    calabi_torus(np.sqrt(2 / 3), np.sqrt(1 / 3), np.sqrt(0.5), np.sqrt(0.5)),
    calabi_product(2, 0.8, 0.6),
    calabi_product(3, 0.8, 0.6),
    calabi_product(4, 0.7, np.sqrt(1 - 0.49)),
    clifford_torus(2),
]


def _fund(fam):
    jet = fam.jet(fam.representative_point())
    return fundamental_forms(jet)


def test_codazzi_zero_and_unit():
    assert codazzi_symmetry_residual(np.zeros((3, 3, 3))) == 0.0
    t = np.zeros((2, 2, 2))
    t[0, 1, 0] = 1.0
    assert codazzi_symmetry_residual(t) == 1.0
    with pytest.raises(WrongDimension):
        codazzi_symmetry_residual(np.zeros((2, 3, 2)))


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f"{f.kind}-n{f.n}")
def test_codazzi_and_reeb_on_families(fam):
    jet = fam.jet(fam.representative_point())
    fund = fundamental_forms(jet)
    assert codazzi_symmetry_residual(fund.sigma_raw) < 1e-10
    assert reeb_component_residual(jet) < 1e-10


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f"{f.kind}-n{f.n}")
def test_stationarity_residuals(fam):
    pt = fam.representative_point()
    assert dmu_residual(fam, pt) < 1e-6
    assert csl_residual(fam, pt) < 1e-5


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f"{f.kind}-n{f.n}")
def test_simons_rhs_vanishes_on_parallel_families(fam):
    """All zoo geometries have parallel sigma, so the identity RHS is 0."""
    fund = _fund(fam)
    n = fund.n
    rhs = simons_rhs(fund, np.zeros((n, n, n)))
    assert np.max(np.abs(rhs)) < 1e-12


def test_simons_rhs_einsum_vs_loops():
    """Dual route: einsum formula against an explicit quadruple loop."""
    fund = _fund(calabi_product(3, 0.8, 0.6))
    n, s, mu = fund.n, fund.sigma, fund.mu
    hm = np.zeros((n, n, n))
    fast = simons_rhs(fund, hm)
    slow = np.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                v = hm[i, j, k] - mu[i] * (j == k) - mu[j] * (i == k)
                v += (n + 1) * s[i, j, k]
                for t in range(n):
                    for u in range(n):
                        v += s[i, j, t] * s[t, k, u] * mu[u]
                for ll in range(n):
                    for ss_ in range(n):
                        for tt in range(n):
                            v += 2 * s[i, ss_, ll] * s[j, ll, tt] * s[k, tt, ss_]
                            v -= s[i, j, ll] * s[ll, ss_, tt] * s[k, ss_, tt]
                            v -= s[j, k, ll] * s[ll, ss_, tt] * s[i, ss_, tt]
                            v -= s[k, i, ll] * s[ll, ss_, tt] * s[j, ss_, tt]
                slow[i, j, k] = v
    assert np.max(np.abs(fast - slow)) < 1e-12


def test_simons_rhs_rigid_shape_closed_form():
    """On the two-eigenvalue model the 111-entry factors as
    (n-1)(lam1 - 2 lam2)(1 + lam1 lam2 - lam2^2)."""
    for n, lam1, lam2 in [(3, 0.4, -1.3), (4, -0.5, 0.75), (5, 2.0, 0.1)]:
        t = np.zeros((n, n, n))
        t[0, 0, 0] = lam1
        for j in range(1, n):
            t[0, j, j] = t[j, 0, j] = t[j, j, 0] = lam2
        fund = fundamental_from_sigma(t)
        rhs = simons_rhs(fund, np.zeros((n, n, n)))
        pred = (n - 1) * (lam1 - 2 * lam2) * (1 + lam1 * lam2 - lam2 ** 2)
        assert rhs[0, 0, 0] == pytest.approx(pred, rel=1e-12, abs=1e-12)


def test_simons_rhs_input_validation():
    fund = _fund(calabi_product(3, 0.8, 0.6))
    with pytest.raises(WrongDimension):
        simons_rhs(fund, np.zeros((2, 2, 2)))
    with pytest.raises(WrongDimension):
        simons_rhs(fund, np.zeros((3, 3, 3)), n=4)
    bad = np.zeros((3, 3, 3))
    bad[0, 1, 2] = 1e-3  # not symmetric in the last slot pair
    with pytest.raises(WrongDimension):
        simons_rhs(fund, bad)


def test_simons_rhs_zero_tensor():
    fund = fundamental_from_sigma(np.zeros((3, 3, 3)))
    assert np.array_equal(simons_rhs(fund, np.zeros((3, 3, 3))), np.zeros((3, 3, 3)))


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f"{f.kind}-n{f.n}")
def test_bochner_vanishes_on_families(fam):
    assert abs(bochner_quantity(_fund(fam))) < 1e-10


def test_equality_fit_product():
    """calabi_product(3, 0.8, 0.6): q = 0.75, lam1 = q - 1/q, lam2 = q."""
    fit = equality_case_fit(_fund(calabi_product(3, 0.8, 0.6)))
    assert fit.valid
    assert fit.lam1 == pytest.approx(-7 / 12, abs=1e-10)
    assert fit.lam2 == pytest.approx(0.75, abs=1e-10)
    assert fit.structural_residual < 1e-10
    assert fit.relation_residual < 1e-10


def test_equality_fit_gates_and_nonexamples():
    assert not equality_case_fit(_fund(totally_geodesic(3))).valid
    # the generic torus is NOT of the rigid shape: large structural residual
    fit = equality_case_fit(_fund(calabi_torus(0.6, 0.8, 0.6, 0.8)))
    assert fit.valid
    assert fit.structural_residual == pytest.approx(0.8035860777639674, abs=1e-9)


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("r1", [0.3, 0.5, 0.7, 0.9])
def test_equality_fit_product_sweep(n, r1):
    """Trace identity lam1 + (n-1) lam2 = |H| and the borderline relation."""
    fund = _fund(calabi_product(n, r1, np.sqrt(1 - r1 ** 2)))
    fit = equality_case_fit(fund)
    assert fit.valid
    assert fit.structural_residual < 1e-9
    assert fit.relation_residual < 1e-9
    h = np.sqrt(fund.normH2)
    assert fit.lam1 + (n - 1) * fit.lam2 == pytest.approx(h, abs=1e-9)


def test_surface_f_value_and_gates():
    fund = _fund(calabi_product(2, 0.8, 0.6))
    assert surface_f(fund) == pytest.approx(-25 / 12, abs=1e-10)
    with pytest.raises(WrongDimension):
        surface_f(_fund(calabi_product(3, 0.8, 0.6)))
    with pytest.raises(ZeroMeanCurvature):
        surface_f(_fund(totally_geodesic(2)))


def test_b2_relation_artificial_tensors():
    # rigid example: only s122 (+ symmetries) nonzero -> residual 0
    t = np.zeros((2, 2, 2))
    t[0, 1, 1] = t[1, 0, 1] = t[1, 1, 0] = 1.0
    assert b2_relation_residual(fundamental_from_sigma(t)) == pytest.approx(0.0, abs=1e-12)
    # only s222 nonzero -> the combination evaluates to exactly 1
    t2 = np.zeros((2, 2, 2))
    t2[1, 1, 1] = 1.0
    assert b2_relation_residual(fundamental_from_sigma(t2)) == pytest.approx(1.0, abs=1e-12)


def test_b2_relation_gates():
    with pytest.raises(WrongDimension):
        b2_relation_residual(_fund(calabi_product(3, 0.8, 0.6)))
    with pytest.raises(ZeroMeanCurvature):
        b2_relation_residual(_fund(totally_geodesic(2)))
    with pytest.raises(WrongDimension):
        principal_determinant_sum(_fund(calabi_product(3, 0.8, 0.6)))


def test_b2_relation_on_torus_grid():
    fam = calabi_torus(0.6, 0.8, 0.3, np.sqrt(1 - 0.09))
    for pt in fam.grid_points(5):
        fund = fundamental_forms(fam.jet(pt))
        assert b2_relation_residual(fund) < 1e-10
        assert abs(principal_determinant_sum(fund)) < 1e-10


@given(st.integers(min_value=0, max_value=2 ** 31 - 1))
@settings(max_examples=40, deadline=None)
def test_b2_relation_matches_determinant_sum(seed):
    """Dual route: rotated-frame combination vs frame-invariant det sum."""
    t = np.random.default_rng(seed).normal(size=(2, 2, 2))
    fund = fundamental_from_sigma(t)
    if np.sqrt(fund.normH2) <= 1e-6:
        return
    assert b2_relation_residual(fund) == pytest.approx(
        abs(principal_determinant_sum(fund)), abs=1e-10)


def test_cdk_bound_frozen_and_brute():
    fund = _fund(calabi_product(3, 0.8, 0.6))
    lhs, rhs = cdk_matrix_bound(fund)
    assert lhs == pytest.approx(13.943913966049376, abs=1e-8)
    assert rhs == pytest.approx(20.70493344907406, abs=1e-8)
    assert lhs <= rhs
    # brute-force the commutator and overlap sums
    n, s = fund.n, fund.sigma
    brute = 0.0
    for i in range(n):
        for j in range(n):
            c = s[i] @ s[j] - s[j] @ s[i]
            brute += float(np.sum(c * c)) + float(np.sum(s[i] * s[j])) ** 2
    assert lhs == pytest.approx(brute, rel=1e-12)


@given(st.integers(min_value=2, max_value=5), st.integers(min_value=0, max_value=2 ** 31 - 1))
@settings(max_examples=60, deadline=None)
def test_cdk_bound_random_tensors(n, seed):
    fund = fundamental_from_sigma(np.random.default_rng(seed).normal(size=(n, n, n)))
    lhs, rhs = cdk_matrix_bound(fund)
    assert lhs <= rhs * (1 + 1e-12)


def test_main0_chain_endpoints():
    s0 = _fund(calabi_product(3, 0.8, 0.6)).sigma0
    chain = main0_chain(s0)
    assert len(chain) == 6
    assert chain[0] == pytest.approx(float(np.sum(s0 * s0)), rel=1e-14)
    assert chain[5] == pytest.approx((3 + 2) / (3 - 1) * s0[0, 0, 0] ** 2, rel=1e-14)
    with pytest.raises(WrongDimension):
        main0_chain(np.zeros((1, 1, 1)))


@given(st.integers(min_value=2, max_value=6), st.integers(min_value=0, max_value=2 ** 31 - 1))
@settings(max_examples=80, deadline=None)
def test_main0_chain_monotone(n, seed):
    """Each Cauchy-Schwarz step discards a nonnegative amount."""
    t = np.random.default_rng(seed).normal(size=(n, n, n))
    s0 = fundamental_from_sigma(t).sigma0
    chain = main0_chain(s0)
    scale = max(1.0, chain[0])
    for a, b in zip(chain, chain[1:]):
        assert a >= b - 1e-12 * scale


@given(st.integers(min_value=3, max_value=6), st.integers(min_value=0, max_value=2 ** 31 - 1))
@settings(max_examples=60, deadline=None)
def test_ricci_lower_bound_random(n, seed):
    fund = fundamental_from_sigma(np.random.default_rng(seed).normal(size=(n, n, n)))
    if np.sqrt(fund.normH2) <= 1e-8:
        return
    lhs, rhs = ricci_lower_bound(fund)
    scale = max(1.0, abs(lhs), abs(rhs))
    assert lhs >= rhs - 1e-10 * scale


def test_ricci_lower_bound_gate():
    with pytest.raises(ZeroMeanCurvature):
        ricci_lower_bound(_fund(totally_geodesic(3)))


@pytest.mark.parametrize("fam", [f for f in FAMILIES if f.kind == "calabi_product"],
                         ids=lambda f: f"{f.kind}-n{f.n}")
def test_ricci_lower_bound_on_products(fam):
    lhs, rhs = ricci_lower_bound(_fund(fam))
    assert lhs >= rhs - 1e-10
    # products sit exactly at ric(mu, mu) = 0
    assert lhs == pytest.approx(0.0, abs=1e-10)
