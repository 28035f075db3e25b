"""Linear baseline reconstructions on a four-point stencil.

All polynomials are written in powers of ``t = x - x_{j+1/2}``, the offset from
the midpoint of the central interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .grid import SecondDiffs, Stencil, second_diffs
from .means import arithmetic_mean, weights


@dataclass(frozen=True)
class CenteredCubic:
    center: float
    coeffs: tuple[float, float, float, float]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    def __call__(self, x):
        return evaluate(self, x)

    def second_derivative(self, x):
        return second_derivative(self, x)

    def inflection(self) -> float:
        """Root of the second derivative; infinite when the cubic term vanishes."""
        a2, a3 = self.coeffs[2], self.coeffs[3]
        if a3 == 0:
            return -np.inf if a2 >= 0 else np.inf
        return self.center - a2 / (3.0 * a3)


@dataclass(frozen=True)
class CenteredQuadratic:
    center: float
    coeffs: tuple[float, float, float]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    def __call__(self, x):
        return evaluate(self, x)


Polynomial = Union[CenteredCubic, CenteredQuadratic]


def evaluate(poly: Polynomial, x):
    """Horner evaluation; accepts scalars or arrays."""
    t = np.asarray(x, dtype=float) - poly.center
    acc = np.zeros_like(t) + poly.coeffs[-1]
    for c in reversed(poly.coeffs[:-1]):
        acc = acc * t + c
    return float(acc) if acc.ndim == 0 else acc


def second_derivative(poly: CenteredCubic, x):
    t = np.asarray(x, dtype=float) - poly.center
    out = 2.0 * poly.coeffs[2] + 6.0 * poly.coeffs[3] * t
    return float(out) if out.ndim == 0 else out


def cubic_from_mean(st: Stencil, d: SecondDiffs, mean: float, replace_right: bool = True) -> CenteredCubic:
    """Cubic through the three unmodified points whose quadratic coefficient is ``mean``.

    With ``replace_right`` the cubic interpolates ``x_{j-1}, x_j, x_{j+1}``,
    otherwise ``x_j, x_{j+1}, x_{j+2}``.  Feeding the weighted arithmetic mean
    gives back the Lagrange cubic through all four points.
    """
    h0, h1, h2 = st.h
    f0, f1 = st.f[1], st.f[2]
    a0 = 0.5 * (f0 + f1) - 0.25 * h1 * h1 * mean
    slope = (f1 - f0) / h1
    if replace_right:
        gap = d.d_left - mean
        a1 = slope + h1 * h1 / (4.0 * h0 + 2.0 * h1) * gap
        a3 = -2.0 / (2.0 * h0 + h1) * gap
    else:
        gap = mean - d.d_right
        a1 = slope + h1 * h1 / (2.0 * h1 + 4.0 * h2) * gap
        a3 = -2.0 / (h1 + 2.0 * h2) * gap
    return CenteredCubic(st.midpoint, (a0, a1, mean, a3))


def lagrange_cubic(st: Stencil) -> CenteredCubic:
    """Cubic interpolating all four stencil points, from the divided-difference closed forms."""
    d = second_diffs(st)
    m = arithmetic_mean(d, weights(*st.h))
    return cubic_from_mean(st, d, m, replace_right=True)


def lagrange_cubic_right_form(st: Stencil) -> CenteredCubic:
    """Same cubic written with the right difference in the linear and cubic terms."""
    d = second_diffs(st)
    m = arithmetic_mean(d, weights(*st.h))
    return cubic_from_mean(st, d, m, replace_right=False)


def lagrange_matrix(h0: float, h1: float, h2: float) -> np.ndarray:
    """4x4 matrix mapping ``(f_{j-1}, f_j, f_{j+1}, f_{j+2})`` to centred coefficients."""
    s = h0 + h1 + h2
    c = np.empty((4, 4))
    c[0, 0] = -h1**2 * (h1 + 2 * h2) / (8 * h0 * (h0 + h1) * s)
    c[0, 1] = (2 * h0 + h1) * (h1 + 2 * h2) / (8 * h0 * (h1 + h2))
    c[0, 2] = (2 * h0 + h1) * (h1 + 2 * h2) / (8 * (h0 + h1) * h2)
    c[0, 3] = -h1**2 * (2 * h0 + h1) / (8 * h2 * (h1 + h2) * s)
    c[1, 0] = h1**2 / (4 * h0 * (h0 + h1) * s)
    c[1, 1] = -(h1**2 + 4 * h0 * (h1 + h2)) / (4 * h0 * h1 * (h1 + h2))
    c[1, 2] = (h1**2 + 4 * h2 * h1 + 4 * h0 * h2) / (4 * h2 * h1**2 + 4 * h0 * h2 * h1)
    c[1, 3] = -h1**2 / (4 * h2 * (h1 + h2) * s)
    c[2, 0] = (h1 + 2 * h2) / (2 * h0 * (h0 + h1) * s)
    c[2, 1] = -(-2 * h0 + h1 + 2 * h2) / (2 * h0 * h1**2 + 2 * h0 * h2 * h1)
    c[2, 2] = -(2 * h0 + h1 - 2 * h2) / (2 * h2 * h1**2 + 2 * h0 * h2 * h1)
    c[2, 3] = (2 * h0 + h1) / (2 * h2 * (h1 + h2) * s)
    c[3, 0] = -1 / (h0 * (h0 + h1) * s)
    c[3, 1] = 1 / (h0 * h1**2 + h0 * h2 * h1)
    c[3, 2] = -1 / (h2 * h1**2 + h0 * h2 * h1)
    c[3, 3] = 1 / (h2 * (h1 + h2) * s)
    return c


def lagrange_cubic_via_matrix(st: Stencil) -> CenteredCubic:
    coeffs = lagrange_matrix(*st.h) @ np.asarray(st.f)
    return CenteredCubic(st.midpoint, tuple(coeffs))


def lagrange_quadratic_left(st: Stencil) -> CenteredQuadratic:
    """Quadratic through the left three stencil points."""
    h1 = st.h[1]
    f0, f1 = st.f[1], st.f[2]
    d_left = second_diffs(st).d_left
    a0 = 0.5 * (f0 + f1) - 0.25 * h1 * h1 * d_left
    return CenteredQuadratic(st.midpoint, (a0, (f1 - f0) / h1, d_left))


def mean_coefficients(h0: float, h1: float, h2: float) -> tuple[float, float, float, float]:
    """``k_{j-1}..k_{j+2}`` with ``M_j = sum(k_m f_m)``.

    The outer two have compact closed forms; the inner two come from
    expanding both divided differences in the ordinates.
    """
    w = weights(h0, h1, h2)
    s = h0 + h1 + h2
    k_left = (2 * h2 + h1) / (2 * h0 * (h1 + h0) * s)
    k_right = (2 * h0 + h1) / (2 * h2 * (h1 + h2) * s)
    k_j = -w.w_left / (h0 * h1) + w.w_right / (h1 * (h1 + h2))
    k_j1 = w.w_left / (h1 * (h0 + h1)) - w.w_right / (h1 * h2)
    return k_left, k_j, k_j1, k_right


def endpoint_from_mean(st: Stencil, mean: float, right: bool = True) -> float:
    """Value of ``f_{j+2}`` (or ``f_{j-1}``) that makes the weighted arithmetic mean equal ``mean``."""
    k = mean_coefficients(*st.h)
    fm, f0, f1, f2 = st.f
    if right:
        return (mean - (k[0] * fm + k[1] * f0 + k[2] * f1)) / k[3]
    return (mean - (k[1] * f0 + k[2] * f1 + k[3] * f2)) / k[0]
