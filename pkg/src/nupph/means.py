"""Weighted means of the two second divided differences of a stencil.

Three means are provided: the weighted arithmetic mean (which reproduces the
Lagrange cubic), the weighted harmonic mean (the PPH limiter) and the
translated harmonic mean, which shifts both differences away from zero
before averaging so that sign changes do not collapse the mean to zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import NonPositiveSpacing
from .grid import SecondDiffs

DEFAULT_EPSILON = 0.5
EPSILON_PRESETS = (0.5, 0.05)


@dataclass(frozen=True)
class Weights:
    w_left: float
    w_right: float


@dataclass(frozen=True)
class TranslationParams:
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        if not (math.isfinite(self.epsilon) and self.epsilon > 0):
            raise ValueError(f"epsilon must be finite and positive, got {self.epsilon!r}")


@dataclass(frozen=True)
class Arithmetic:
    label = "lagrange"


@dataclass(frozen=True)
class Harmonic:
    label = "pph"


@dataclass(frozen=True)
class Translated:
    params: TranslationParams = TranslationParams()

    @property
    def epsilon(self) -> float:
        return self.params.epsilon

    @property
    def label(self) -> str:
        return f"translated(eps={self.epsilon:g})"


MeanKind = Union[Arithmetic, Harmonic, Translated]


def translated(epsilon: float) -> Translated:
    return Translated(TranslationParams(epsilon))


def weights(h_left: float, h_mid: float, h_right: float) -> Weights:
    """Weights of the left and right differences for spacings ``h_j, h_{j+1}, h_{j+2}``.

    On a uniform grid both weights are 1/2.
    """
    if not (h_left > 0 and h_mid > 0 and h_right > 0):
        raise NonPositiveSpacing(f"spacings must be positive, got {(h_left, h_mid, h_right)}")
    s = 2.0 * (h_left + h_mid + h_right)
    w_left = (h_mid + 2.0 * h_right) / s
    return Weights(w_left, 1.0 - w_left)


def arithmetic_mean(d: SecondDiffs, w: Weights) -> float:
    return w.w_left * d.d_left + w.w_right * d.d_right


def _harmonic(a: float, b: float, w: Weights) -> float:
    if a * b > 0:
        return a * b / (w.w_left * b + w.w_right * a)
    return 0.0


def harmonic_mean(d: SecondDiffs, w: Weights) -> float:
    """Weighted harmonic mean; exactly zero unless both differences share a strict sign."""
    return _harmonic(d.d_left, d.d_right, w)


def _dominant_sign(d: SecondDiffs) -> float:
    # sign of the larger-magnitude difference; ties go to the right one, +1 at (0, 0)
    big = d.d_left if abs(d.d_left) > abs(d.d_right) else d.d_right
    return -1.0 if big < 0 else 1.0


def translation(d: SecondDiffs, p: TranslationParams) -> float:
    sigma = _dominant_sign(d)
    if d.d_left * d.d_right > 0:
        return sigma * p.epsilon
    return sigma * (min(abs(d.d_left), abs(d.d_right)) + p.epsilon)


def shifted_pair(d: SecondDiffs, p: TranslationParams) -> tuple[float, float, float]:
    """Return ``(T, D_j + T, D_{j+1} + T)``.

    When the differences do not share a sign, the smaller one is shifted onto
    exactly ``sign * epsilon``, which is what the sum evaluates to in exact
    arithmetic; this keeps the shifted product positive even when
    ``|D| + epsilon`` rounds to ``|D|``.
    """
    t = translation(d, p)
    a, b = d.d_left + t, d.d_right + t
    if d.d_left * d.d_right <= 0:
        sigma = _dominant_sign(d)
        eps = sigma * p.epsilon
        if abs(d.d_left) > abs(d.d_right):
            b = eps
        elif abs(d.d_left) < abs(d.d_right):
            a = eps
        elif d.d_left == d.d_right:  # both zero
            a = b = eps
        elif sigma * d.d_left < 0:
            a = eps
        else:
            b = eps
    return t, a, b


def translated_mean(d: SecondDiffs, w: Weights, p: TranslationParams) -> float:
    t, a, b = shifted_pair(d, p)
    return _harmonic(a, b, w) - t


def apply_mean(kind: MeanKind, d: SecondDiffs, w: Weights) -> float:
    if isinstance(kind, Arithmetic):
        return arithmetic_mean(d, w)
    if isinstance(kind, Harmonic):
        return harmonic_mean(d, w)
    if isinstance(kind, Translated):
        return translated_mean(d, w, kind.params)
    raise TypeError(f"unknown mean kind {kind!r}")
