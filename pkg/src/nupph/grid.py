"""Non-uniform grids, four-point stencils and second divided differences.

Interval ``j`` is ``[x[j], x[j+1]]`` (indexed by its left node). It can be
reconstructed only when it has one extra node on each side, which for a grid
of ``n`` nodes means ``1 <= j <= n - 3``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (
    DegenerateSpacing,
    LengthMismatch,
    NonFiniteData,
    NotStrictlyIncreasing,
    OutOfRange,
    SamplerFailure,
    TooFewPoints,
)

Sampler = Callable[[np.ndarray], np.ndarray]

MIN_POINTS = 4
# spacings below SPACING_RTOL * span are rejected
SPACING_RTOL = 1e3 * np.finfo(float).eps


def _frozen(values: np.ndarray) -> np.ndarray:
    out = np.array(values, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class NonUniformGrid:
    """Strictly increasing abscissas with the sampled ordinates.

    Build instances through :func:`build_grid`, which validates the data.
    """

    x: np.ndarray
    f: np.ndarray

    def __len__(self) -> int:
        return len(self.x)

    @property
    def spacings(self) -> np.ndarray:
        return np.diff(self.x)

    @property
    def interior_intervals(self) -> range:
        """Indices of the intervals that have a full four-point stencil."""
        return range(1, len(self.x) - 2)

    def stencil(self, j: int) -> "Stencil":
        return stencil_at(self, j)


@dataclass(frozen=True)
class Stencil:
    """Four consecutive points ``x[j-1..j+2]`` with their ordinates."""

    x: tuple[float, float, float, float]
    f: tuple[float, float, float, float]

    def __post_init__(self):
        if len(self.x) != 4 or len(self.f) != 4:
            raise LengthMismatch("a stencil holds exactly four points")
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))
        object.__setattr__(self, "f", tuple(float(v) for v in self.f))
        if not all(np.isfinite(self.x)) or not all(np.isfinite(self.f)):
            raise NonFiniteData("stencil data must be finite")
        if not all(h > 0 for h in self.h):
            raise NotStrictlyIncreasing(f"stencil abscissas {self.x} are not strictly increasing")

    @property
    def h(self) -> tuple[float, float, float]:
        """Spacings ``(h_j, h_{j+1}, h_{j+2})``; the middle one is the central interval."""
        x = self.x
        return (x[1] - x[0], x[2] - x[1], x[3] - x[2])

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.x[1] + self.x[2])

    @property
    def span(self) -> float:
        return self.x[3] - self.x[0]

    def replace_f(self, index: int, value: float) -> "Stencil":
        f = list(self.f)
        f[index] = value
        return Stencil(self.x, tuple(f))


@dataclass(frozen=True)
class SecondDiffs:
    """Left and right second divided differences of a stencil."""

    d_left: float
    d_right: float

    def __iter__(self):
        yield self.d_left
        yield self.d_right


def build_grid(abscissas: Sequence[float], ordinates: Sequence[float]) -> NonUniformGrid:
    x = np.asarray(abscissas, dtype=float).ravel()
    f = np.asarray(ordinates, dtype=float).ravel()
    if x.size != f.size:
        raise LengthMismatch(f"{x.size} abscissas but {f.size} ordinates")
    if x.size < MIN_POINTS:
        raise TooFewPoints(f"need at least {MIN_POINTS} points, got {x.size}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(f))):
        raise NonFiniteData("grid data must be finite")
    dx = np.diff(x)
    if np.any(dx <= 0):
        i = int(np.argmax(dx <= 0))
        raise NotStrictlyIncreasing(f"x[{i}]={x[i]!r} is not below x[{i + 1}]={x[i + 1]!r}")
    span = x[-1] - x[0]
    if np.any(dx < SPACING_RTOL * span):
        i = int(np.argmin(dx))
        raise DegenerateSpacing(f"spacing {dx[i]!r} after x[{i}] is too small for span {span!r}")
    return NonUniformGrid(_frozen(x), _frozen(f))


def sample_grid(abscissas: Sequence[float], sampler: Sampler) -> NonUniformGrid:
    """Build a grid by evaluating ``sampler`` at the given abscissas."""
    x = np.asarray(abscissas, dtype=float)
    f = np.asarray(sampler(x), dtype=float)
    if f.shape != x.shape:
        f = np.broadcast_to(f, x.shape)
    if not np.all(np.isfinite(f)):
        bad = x[~np.isfinite(f)]
        raise SamplerFailure(f"sampler returned non-finite values at x={bad[:3].tolist()}")
    return build_grid(x, f)


def stencil_at(grid: NonUniformGrid, j: int) -> Stencil:
    n = len(grid.x)
    if not 1 <= j <= n - 3:
        raise OutOfRange(f"interval {j} has no full stencil in a grid of {n} nodes (valid: 1..{n - 3})")
    return Stencil(tuple(grid.x[j - 1 : j + 3]), tuple(grid.f[j - 1 : j + 3]))


def second_diffs(st: Stencil) -> SecondDiffs:
    h0, h1, h2 = st.h
    fm, f0, f1, f2 = st.f
    d_left = fm / (h0 * (h0 + h1)) - f0 / (h0 * h1) + f1 / (h1 * (h0 + h1))
    d_right = f0 / (h1 * (h1 + h2)) - f1 / (h1 * h2) + f2 / (h2 * (h1 + h2))
    return SecondDiffs(d_left, d_right)


def midpoint_refine(abscissas: Sequence[float]) -> np.ndarray:
    """Insert the midpoint of every interval; ``n`` nodes become ``2n - 1``."""
    x = np.asarray(abscissas, dtype=float)
    out = np.empty(2 * x.size - 1)
    out[0::2] = x
    out[1::2] = 0.5 * (x[:-1] + x[1:])
    return out


def refine_dyadic(grid: NonUniformGrid, sampler: Sampler) -> NonUniformGrid:
    """Halve every interval and resample ``sampler`` at all nodes."""
    return sample_grid(midpoint_refine(grid.x), sampler)
