"""Built-in Legendrian immersion families with closed-form reference data.

Four kinds:

* ``totally_geodesic`` — the real unit sphere S^n in R^{n+1} subset C^{n+1},
  in spherical coordinates.
* ``calabi_torus`` — the flat surface family in S^5 parametrized by
  (r1, r2, r3, r4) with r1^2 + r2^2 = r3^2 + r4^2 = 1,
  F(t, s) = (r1 r3 e^{i(r2/r1 t + r4/r3 s)},
             r1 r4 e^{i(r2/r1 t - r3/r4 s)},
             r2 e^{-i r1/r2 t}).
* ``calabi_product`` — the warped product of the Legendrian circle
  gamma(t) = (r1 e^{i r2/r1 t}, r2 e^{-i r1/r2 t}) with a totally geodesic
  S^{n-1}: the first factor multiplies the real sphere chart, the second is
  appended as the last ambient coordinate.
* ``clifford_torus`` — (1/sqrt(n+1)) (e^{i t1}, ..., e^{i tn},
  e^{-i(t1+...+tn)}).  An extension beyond the closed-form families: it is
  validated purely by the library's own residual checks, and ``oracle`` only
  covers n <= 2 where flat minimal invariants pin the numbers.

``oracle`` returns the closed-form sigma / mean-curvature data in the chart
frame (E_1 = dF/dt first, matching the deterministic Gram-Schmidt order for
positive parameters).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product as _iterproduct
from typing import Optional

import numpy as np

from .errors import InvalidParams, NoOracle
from .jets import Jet2, Jet2Scalar, exp_imag, jet_vars

__all__ = [
    "KINDS",
    "FamilySpec",
    "OracleData",
    "ImmersionFamily",
    "totally_geodesic",
    "calabi_torus",
    "calabi_product",
    "clifford_torus",
    "family_from_spec",
    "oracle",
]

KINDS = ("totally_geodesic", "calabi_torus", "calabi_product", "clifford_torus")

MIN_PARAM = 1e-6       # |r_i| below this is rejected
UNIT_TOL = 1e-12       # tolerance on r1^2 + r2^2 = 1
POLAR_LO = 0.1         # polar angles sampled in [0.1, pi - 0.1], clear of poles


@dataclass(frozen=True)
class FamilySpec:
    """Validated description of one immersion family."""

    kind: str
    n: int
    params: dict = field(default_factory=dict)

    def param_tuple(self, *names: str) -> tuple[float, ...]:
        return tuple(float(self.params[k]) for k in names)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise InvalidParams(msg)


def _check_unit_pair(params: dict, a: str, b: str) -> None:
    ra, rb = float(params[a]), float(params[b])
    s = ra * ra + rb * rb
    _require(abs(s - 1.0) <= UNIT_TOL,
             f"constraint {a}^2 + {b}^2 = 1 violated: got {s!r}")
    for name, v in ((a, ra), (b, rb)):
        _require(abs(v) >= MIN_PARAM, f"parameter {name} too close to zero: {v!r}")


def validate_spec(spec: FamilySpec) -> None:
    if spec.kind not in KINDS:
        raise InvalidParams(f"unknown family kind {spec.kind!r}")
    allowed = {"calabi_torus": {"r1", "r2", "r3", "r4"},
               "calabi_product": {"r1", "r2"}}.get(spec.kind, set())
    extra = set(spec.params) - allowed
    _require(not extra, f"unexpected parameters for {spec.kind}: {sorted(extra)}")
    missing = allowed - set(spec.params)
    _require(not missing, f"missing parameters for {spec.kind}: {sorted(missing)}")

    if spec.kind == "totally_geodesic":
        _require(spec.n >= 1, f"totally_geodesic needs n >= 1, got {spec.n}")
    elif spec.kind == "clifford_torus":
        _require(spec.n >= 1, f"clifford_torus needs n >= 1, got {spec.n}")
    elif spec.kind == "calabi_torus":
        _require(spec.n == 2, f"calabi_torus is a surface family (n = 2), got {spec.n}")
        _check_unit_pair(spec.params, "r1", "r2")
        _check_unit_pair(spec.params, "r3", "r4")
    elif spec.kind == "calabi_product":
        _require(spec.n >= 2, f"calabi_product needs n >= 2, got {spec.n}")
        _check_unit_pair(spec.params, "r1", "r2")


# --- trig building blocks on jets ------------------------------------------

def _cos(u: Jet2Scalar) -> Jet2Scalar:
    return 0.5 * (exp_imag(u) + exp_imag(-1.0 * u))


def _sin(u: Jet2Scalar) -> Jet2Scalar:
    return -0.5j * (exp_imag(u) - exp_imag(-1.0 * u))


def _sphere_chart(angles: list[Jet2Scalar], chart_dim: int) -> list[Jet2Scalar]:
    """Real spherical coordinates: k angles -> k+1 components of S^k."""
    from .jets import jet_const

    comps: list[Jet2Scalar] = []
    prefix = jet_const(1.0, chart_dim)
    for u in angles:
        comps.append(prefix * _cos(u))
        prefix = prefix * _sin(u)
    comps.append(prefix)
    return comps


@dataclass(frozen=True)
class ImmersionFamily:
    """A parametrized Legendrian immersion with exact 2-jet evaluation.

    ``axis_kinds`` labels each chart axis "torus" (full circle) or "polar"
    (clear of coordinate poles); grids are built accordingly.
    """

    spec: FamilySpec
    axis_kinds: tuple[str, ...]

    @property
    def kind(self) -> str:
        return self.spec.kind

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def chart_dim(self) -> int:
        return self.spec.n

    def jet(self, point) -> Jet2:
        point = np.asarray(point, dtype=float)
        if point.shape != (self.chart_dim,):
            raise ValueError(
                f"chart point must have shape ({self.chart_dim},), got {point.shape}")
        u = jet_vars(point)
        kind = self.spec.kind
        if kind == "totally_geodesic":
            comps = _sphere_chart(u, self.chart_dim)
        elif kind == "calabi_torus":
            r1, r2, r3, r4 = self.spec.param_tuple("r1", "r2", "r3", "r4")
            t, s = u
            comps = [
                (r1 * r3) * exp_imag((r2 / r1) * t + (r4 / r3) * s),
                (r1 * r4) * exp_imag((r2 / r1) * t - (r3 / r4) * s),
                r2 * exp_imag((-r1 / r2) * t),
            ]
        elif kind == "calabi_product":
            r1, r2 = self.spec.param_tuple("r1", "r2")
            t, angles = u[0], u[1:]
            g1 = exp_imag((r2 / r1) * t)
            base = _sphere_chart(angles, self.chart_dim)
            comps = [(r1 * g1) * x for x in base]
            comps.append(r2 * exp_imag((-r1 / r2) * t))
        else:  # clifford_torus
            c = 1.0 / math.sqrt(self.n + 1)
            total = u[0]
            for v in u[1:]:
                total = total + v
            comps = [c * exp_imag(v) for v in u]
            comps.append(c * exp_imag(-1.0 * total))
        return Jet2.from_components(comps)

    def chart_axes(self, per_axis: int) -> list[np.ndarray]:
        axes = []
        for k in self.axis_kinds:
            if k == "torus":
                axes.append(np.linspace(0.0, 2.0 * np.pi, per_axis, endpoint=False))
            else:
                axes.append(np.linspace(POLAR_LO, np.pi - POLAR_LO, per_axis))
        return axes

    def grid_points(self, per_axis: int, cap: Optional[int] = None,
                    seed: int = 0) -> np.ndarray:
        """Chart sample points: the full per-axis lattice, or a seeded
        subsample of it when the lattice exceeds ``cap`` points."""
        axes = self.chart_axes(per_axis)
        total = per_axis ** len(axes)
        if cap is None or total <= cap:
            mesh = list(_iterproduct(*axes))
            return np.array(mesh, dtype=float).reshape(total, len(axes))
        rng = np.random.default_rng(seed)
        idx = rng.integers(0, per_axis, size=(cap, len(axes)))
        pts = np.empty((cap, len(axes)))
        for a, axis in enumerate(axes):
            pts[:, a] = axis[idx[:, a]]
        return pts[np.lexsort(pts.T[::-1])]

    def representative_point(self) -> np.ndarray:
        """A fixed interior chart point (used by scans and smoke checks)."""
        return np.array([0.7 if k == "torus" else 1.1 for k in self.axis_kinds])


def _axis_kinds(kind: str, n: int) -> tuple[str, ...]:
    if kind == "totally_geodesic":
        return ("polar",) * (n - 1) + ("torus",)
    if kind == "calabi_torus":
        return ("torus", "torus")
    if kind == "calabi_product":
        # chart (t, theta_1, ..., theta_{n-1}); the base S^{n-1} has n-2
        # polar angles plus one full-circle azimuth
        return ("torus",) + ("polar",) * (n - 2) + ("torus",)
    return ("torus",) * n


def family_from_spec(spec: FamilySpec) -> ImmersionFamily:
    validate_spec(spec)
    return ImmersionFamily(spec=spec, axis_kinds=_axis_kinds(spec.kind, spec.n))


def totally_geodesic(n: int) -> ImmersionFamily:
    return family_from_spec(FamilySpec("totally_geodesic", n))


def calabi_torus(r1: float, r2: float, r3: float, r4: float) -> ImmersionFamily:
    return family_from_spec(FamilySpec(
        "calabi_torus", 2, {"r1": r1, "r2": r2, "r3": r3, "r4": r4}))


def calabi_product(n: int, r1: float, r2: float) -> ImmersionFamily:
    return family_from_spec(FamilySpec("calabi_product", n, {"r1": r1, "r2": r2}))


def clifford_torus(n: int) -> ImmersionFamily:
    return family_from_spec(FamilySpec("clifford_torus", n))


@dataclass(frozen=True)
class OracleData:
    """Closed-form reference values, in the chart frame where available.

    ``sigma_expected``/``H_frame`` are None for kinds whose frame has no
    closed form (clifford_torus); the norm invariants are still populated.
    """

    sigma_expected: Optional[np.ndarray]
    H_frame: Optional[np.ndarray]
    normB2: float
    normH2: float
    minimal: bool
    equality_basic: bool


def _symmetric_from_entries(n: int, entries: dict) -> np.ndarray:
    t = np.zeros((n, n, n))
    for (i, j, k), v in entries.items():
        for p in {(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)}:
            t[p] = v
    return t


def oracle(spec: FamilySpec) -> OracleData:
    """Closed-form FundamentalData-level values for a validated spec."""
    validate_spec(spec)
    n = spec.n
    if spec.kind == "totally_geodesic":
        return OracleData(sigma_expected=np.zeros((n, n, n)),
                          H_frame=np.zeros(n), normB2=0.0, normH2=0.0,
                          minimal=True, equality_basic=False)
    if spec.kind == "calabi_torus":
        r1, r2, r3, r4 = spec.param_tuple("r1", "r2", "r3", "r4")
        s111 = r2 / r1 - r1 / r2
        s122 = r2 / r1
        s222 = (r4 / r3 - r3 / r4) / r1
        sigma = _symmetric_from_entries(2, {(0, 0, 0): s111, (0, 1, 1): s122,
                                            (1, 1, 1): s222})
        h = np.array([2.0 * r2 / r1 - r1 / r2, s222])
        norm_b2 = s111 ** 2 + 3.0 * s122 ** 2 + s222 ** 2
        norm_h2 = float(h @ h)
        minimal = abs(h[0]) <= 1e-9 and abs(h[1]) <= 1e-9
        # threshold_basic(2, h2) = 2 + h2 and |B|^2 = 2 + |H|^2 (flat), so the
        # basic bound is an equality on the whole family.
        return OracleData(sigma_expected=sigma, H_frame=h, normB2=norm_b2,
                          normH2=norm_h2, minimal=minimal, equality_basic=True)
    if spec.kind == "calabi_product":
        r1, r2 = spec.param_tuple("r1", "r2")
        q = r2 / r1
        lam1 = q - 1.0 / q
        lam2 = q
        entries = {(0, 0, 0): lam1}
        for j in range(1, n):
            entries[(0, j, j)] = lam2
        sigma = _symmetric_from_entries(n, entries)
        h = np.zeros(n)
        h[0] = n * q - 1.0 / q
        norm_b2 = lam1 ** 2 + 3.0 * (n - 1) * lam2 ** 2
        norm_h2 = float(h[0] ** 2)
        minimal = abs(h[0]) <= 1e-9
        equality = abs(r1) <= math.sqrt(n / (n + 1.0)) + 1e-12
        return OracleData(sigma_expected=sigma, H_frame=h, normB2=norm_b2,
                          normH2=norm_h2, minimal=minimal, equality_basic=equality)
    # clifford_torus: only the flat minimal invariants for n <= 2 are pinned
    # (n = 1 is a great circle, n = 2 is congruent to the minimal Calabi
    # torus); beyond that there is no closed-form reference here.
    if n == 1:
        return OracleData(sigma_expected=np.zeros((1, 1, 1)), H_frame=np.zeros(1),
                          normB2=0.0, normH2=0.0, minimal=True, equality_basic=False)
    if n == 2:
        return OracleData(sigma_expected=None, H_frame=None, normB2=2.0,
                          normH2=0.0, minimal=True, equality_basic=True)
    raise NoOracle(f"no closed-form oracle for clifford_torus with n = {n}")
