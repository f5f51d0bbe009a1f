"""Exact second-order jets of complex-valued maps on a real chart.

A 2-jet carries value, gradient and Hessian of a map R^d -> C at a single
chart point.  Arithmetic (+, -, *, scalar multiples) propagates all three
exactly; the only transcendental supported is exp(i * L) for a real affine
form L of the chart variables, which is all the closed-form immersions in
this package need.  Everything third-order is obtained by central finite
differences of exactly evaluated lower-order fields (``fd_partial``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "Jet2Scalar",
    "Jet2",
    "jet_const",
    "jet_var",
    "jet_vars",
    "exp_imag",
    "fd_partial",
]


@dataclass(frozen=True)
class Jet2Scalar:
    """Value, gradient and Hessian of one complex component at a point.

    ``grad`` has shape (d,), ``hess`` shape (d, d).  The Hessian is kept
    bitwise symmetric: every constructor below assembles it from expressions
    that are invariant under swapping the two slots, so ``hess[a, b]`` and
    ``hess[b, a]`` are the same float, not merely close.
    """

    value: complex
    grad: np.ndarray
    hess: np.ndarray

    @property
    def chart_dim(self) -> int:
        return self.grad.shape[0]

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Jet2Scalar):
            self._check_dim(other)
            return Jet2Scalar(self.value + other.value,
                              self.grad + other.grad,
                              self.hess + other.hess)
        return Jet2Scalar(self.value + complex(other), self.grad, self.hess)

    __radd__ = __add__

    def __neg__(self):
        return Jet2Scalar(-self.value, -self.grad, -self.hess)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet2Scalar) else -complex(other))

    def __rsub__(self, other):
        return (-self) + complex(other)

    def __mul__(self, other):
        if isinstance(other, Jet2Scalar):
            self._check_dim(other)
            value = self.value * other.value
            grad = self.grad * other.value + self.value * other.grad
            # Leibniz cross term: outer(u', v') + outer(v', u') is bitwise
            # symmetric because both float * and + commute exactly.  It must
            # be summed as a pair BEFORE joining the other addends, or the
            # left-to-right accumulation orders differ across the diagonal.
            cross = np.outer(self.grad, other.grad) + np.outer(other.grad, self.grad)
            hess = self.hess * other.value + cross + self.value * other.hess
            return Jet2Scalar(value, grad, hess)
        c = complex(other)
        return Jet2Scalar(c * self.value, c * self.grad, c * self.hess)

    __rmul__ = __mul__

    def conjugate(self) -> "Jet2Scalar":
        """Jet of the complex conjugate map."""
        return Jet2Scalar(np.conj(self.value), np.conj(self.grad), np.conj(self.hess))

    def _check_dim(self, other: "Jet2Scalar") -> None:
        if self.grad.shape != other.grad.shape:
            raise ValueError(
                f"chart_dim mismatch: {self.grad.shape[0]} vs {other.grad.shape[0]}")


def jet_const(value: complex, chart_dim: int) -> Jet2Scalar:
    """Constant map: zero gradient and Hessian."""
    return Jet2Scalar(complex(value),
                      np.zeros(chart_dim, dtype=complex),
                      np.zeros((chart_dim, chart_dim), dtype=complex))


def jet_var(point: np.ndarray, a: int) -> Jet2Scalar:
    """Jet of the a-th chart coordinate at ``point``."""
    point = np.asarray(point, dtype=float)
    d = point.shape[0]
    if not 0 <= a < d:
        raise IndexError(f"variable index {a} out of range for chart_dim {d}")
    grad = np.zeros(d, dtype=complex)
    grad[a] = 1.0
    return Jet2Scalar(complex(point[a]), grad, np.zeros((d, d), dtype=complex))


def jet_vars(point: np.ndarray) -> list[Jet2Scalar]:
    """Jets of all chart coordinates at ``point``."""
    point = np.asarray(point, dtype=float)
    return [jet_var(point, a) for a in range(point.shape[0])]


def exp_imag(u: Jet2Scalar) -> Jet2Scalar:
    """Jet of exp(i*u) for a real affine form u of the chart variables.

    For affine u the chain rule terminates: grad = i u' w and
    hess = (i u')(i u')^T w with w = exp(i u).  The argument must be affine
    (zero Hessian) with real value and gradient; anything else is outside
    the supported closed-form algebra.
    """
    if np.any(u.hess != 0):
        raise ValueError("exp_imag argument must be affine (zero Hessian)")
    if u.value.imag != 0 or np.any(u.grad.imag != 0):
        raise ValueError("exp_imag argument must be real-valued")
    w = np.exp(1j * u.value)
    ig = 1j * u.grad
    # outer(ig, ig) is bitwise symmetric already.
    return Jet2Scalar(w, ig * w, np.outer(ig, ig) * w)


@dataclass(frozen=True)
class Jet2:
    """2-jet of a map R^d -> C^m: stacked component jets as dense arrays.

    value: (m,), jac: (d, m) with jac[a] = dF/du_a, hess: (d, d, m).
    """

    value: np.ndarray
    jac: np.ndarray
    hess: np.ndarray

    @property
    def chart_dim(self) -> int:
        return self.jac.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.value.shape[0]

    @staticmethod
    def from_components(components: Sequence[Jet2Scalar]) -> "Jet2":
        if not components:
            raise ValueError("need at least one component")
        d = components[0].chart_dim
        for c in components:
            if c.chart_dim != d:
                raise ValueError("chart_dim mismatch between components")
        value = np.array([c.value for c in components], dtype=complex)
        jac = np.stack([c.grad for c in components], axis=-1)
        hess = np.stack([c.hess for c in components], axis=-1)
        return Jet2(value, jac, hess)


def fd_partial(field: Callable[[np.ndarray], np.ndarray],
               point: np.ndarray, a: int, h: float) -> np.ndarray:
    """Central difference d(field)/du_a at ``point`` with step ``h``.

    ``field`` may return a scalar or any ndarray; the quotient has the same
    shape.  Used for the third-order quantities (Christoffel symbols, d(mu))
    that the exact jet algebra deliberately does not carry.
    """
    point = np.asarray(point, dtype=float)
    if not 0 <= a < point.shape[0]:
        raise IndexError(f"variable index {a} out of range")
    if h <= 0:
        raise ValueError("step must be positive")
    step = np.zeros_like(point)
    step[a] = h
    fp = np.asarray(field(point + step))
    fm = np.asarray(field(point - step))
    return (fp - fm) / (2.0 * h)
