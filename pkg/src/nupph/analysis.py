"""Convexity thresholds and grid-refinement error studies.

Piecewise reconstructions use each stencil's cubic only on its central
interval.  The first and last intervals of a grid have no full stencil; they
are left out of error norms unless ``include_boundary`` is set, in which case
the nearest interior cubic is extrapolated over them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ConfigError, NotConvexData
from .grid import NonUniformGrid, Sampler, Stencil, refine_dyadic, second_diffs
from .lagrange import CenteredCubic
from .means import Arithmetic, Harmonic, MeanKind, apply_mean, weights
from .pph import PphCase, classify, reconstruct

DEFAULT_SAMPLES = 20

# Spacing sum multiplying D_{j+1}/(D_j - D_{j+1}) in the case-2 Lagrange threshold.
# "stencil-span" is h_j + h_{j+1} + h_{j+2}; "printed" is h_{j+1} + 2 h_{j+2}.
CASE2_PL_READINGS = ("stencil-span", "printed")
CASE2_PL_READING = "stencil-span"


@dataclass(frozen=True)
class ConvexityReport:
    """Where the PPH and Lagrange cubics of a convex stencil keep their curvature sign.

    For ``REPLACE_RIGHT`` the curvature has the data's sign for ``x > x_pph``
    (resp. ``x_pl``); for ``REPLACE_LEFT`` it does for ``x < x_pph``.
    ``preserved_on_central`` covers ``[x_j, x_{j+2}]`` in the first case and
    ``[x_{j-1}, x_{j+1}]`` in the second; ``preserved_on_full`` covers the
    whole stencil.
    """

    x_pph: float
    x_pl: float
    gap: float
    preserved_on_central: bool
    preserved_on_full: bool
    case: PphCase
    orientation: str = "convex"
    pl_reading: str = CASE2_PL_READING


def _case1_pph_threshold(st: Stencil, dl: float, dr: float) -> float:
    if dl == dr:
        return -math.inf
    return st.midpoint - sum(st.h) / 3 * dr / (dr - dl)


def _case1_pl_threshold(st: Stencil, dl: float, dr: float) -> float:
    if dl == dr:
        return -math.inf
    h0, h1, _ = st.h
    return st.midpoint - (2 * h0 + h1) / 6 - sum(st.h) / 3 * dl / (dr - dl)


def _case2_pph_threshold(st: Stencil, dl: float, dr: float) -> float:
    return st.midpoint + sum(st.h) / 3 * dl / (dl - dr)


def case2_pl_threshold(st: Stencil, dl: float, dr: float, reading: str = CASE2_PL_READING) -> float:
    """Case-2 Lagrange threshold under either reading of its spacing sum."""
    _, h1, h2 = st.h
    if reading == "stencil-span":
        total = sum(st.h)
    elif reading == "printed":
        total = h1 + 2 * h2
    else:
        raise ValueError(f"unknown reading {reading!r}; expected one of {CASE2_PL_READINGS}")
    return st.midpoint + (h1 + 2 * h2) / 6 + total / 3 * dr / (dl - dr)


def threshold_from_mean(st: Stencil, dl: float, dr: float, mean: float) -> float:
    """Curvature threshold of the cubic built from ``mean``, for positive differences.

    This is the form before substituting the harmonic mean; it applies to any
    mean lying between the two differences.
    """
    h0, h1, h2 = st.h
    if abs(dl) <= abs(dr):
        if mean == dl:
            return -math.inf
        return st.midpoint - (2 * h0 + h1) / 6 * mean / (mean - dl)
    return st.midpoint + (h1 + 2 * h2) / 6 * mean / (mean - dr)


def convexity_report(st: Stencil, kind: MeanKind = Harmonic()) -> ConvexityReport:
    d = second_diffs(st)
    if not d.d_left * d.d_right > 0:
        raise NotConvexData(f"second differences {tuple(d)} do not share a strict sign")
    if isinstance(kind, Arithmetic):
        raise ConfigError("the convexity report compares a nonlinear mean against Lagrange")
    orientation = "convex" if d.d_left > 0 else "concave"
    # concave data is handled as its mirror image: negating f keeps every threshold
    dl, dr = abs(d.d_left), abs(d.d_right)
    h0, h1, h2 = st.h
    case = classify(d)
    x_lo, x_j, x_j1 = st.x[0], st.x[1], st.x[2]

    if isinstance(kind, Harmonic):
        if case is PphCase.REPLACE_RIGHT:
            x_pph = _case1_pph_threshold(st, dl, dr)
            central = (h1 - 2 * (h0 + h2)) * dr < 3 * h1 * dl
            full = (4 * h0 + h1 - 2 * h2) * dr < 3 * (2 * h0 + h1) * dl
        else:
            x_pph = _case2_pph_threshold(st, dl, dr)
            central = (h1 - 2 * (h0 + h2)) * dl < 3 * h1 * dr
            full = (4 * h2 + h1 - 2 * h0) * dl < 3 * (2 * h2 + h1) * dr
    else:
        w = weights(h0, h1, h2)
        mean = abs(apply_mean(kind, d, w))
        x_pph = threshold_from_mean(st, dl, dr, mean)
        if case is PphCase.REPLACE_RIGHT:
            central, full = x_pph < x_j, x_pph < x_lo
        else:
            central, full = x_pph > x_j1, x_pph > st.x[3]

    if case is PphCase.REPLACE_RIGHT:
        x_pl = _case1_pl_threshold(st, dl, dr)
        gap = (h1 + 2 * h2) / 6 if isinstance(kind, Harmonic) else x_pl - x_pph
    else:
        x_pl = case2_pl_threshold(st, dl, dr)
        gap = (2 * h0 + h1) / 6 if isinstance(kind, Harmonic) else x_pph - x_pl
    return ConvexityReport(x_pph, x_pl, gap, bool(central), bool(full), case, orientation)


def bisect_sign_change(poly: CenteredCubic, scale: float, tol: float = 1e-13) -> float:
    """Locate the sign change of ``poly``'s second derivative by bracketing and bisection.

    The bracket grows from the centre in steps of ``scale`` until the sign
    differs at the two ends.
    """
    g = poly.second_derivative
    lo, hi = poly.center - scale, poly.center + scale
    for _ in range(200):
        if np.sign(g(lo)) != np.sign(g(hi)):
            break
        lo, hi = poly.center - 2 * (poly.center - lo), poly.center + 2 * (hi - poly.center)
    else:
        return math.nan
    glo = g(lo)
    while hi - lo > tol * max(1.0, abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm == 0:
            return mid
        if np.sign(gm) == np.sign(glo):
            lo, glo = mid, gm
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# piecewise reconstruction and error norms


@dataclass(frozen=True)
class Piece:
    j: int
    lo: float
    hi: float
    poly: CenteredCubic


def piecewise(grid: NonUniformGrid, kind: MeanKind, include_boundary: bool = False) -> list[Piece]:
    pieces = [Piece(j, grid.x[j], grid.x[j + 1], reconstruct(grid.stencil(j), kind)) for j in grid.interior_intervals]
    if include_boundary:
        n = len(grid.x)
        first, last = pieces[0], pieces[-1]
        pieces.insert(0, Piece(0, grid.x[0], grid.x[1], first.poly))
        pieces.append(Piece(n - 2, grid.x[n - 2], grid.x[n - 1], last.poly))
    return pieces


def interval_errors(grid: NonUniformGrid, sampler: Sampler, kind: MeanKind, samples_per_interval: int = DEFAULT_SAMPLES, include_boundary: bool = False) -> list[tuple[int, float]]:
    """Sup error of the reconstruction against ``sampler`` on each covered interval."""
    if samples_per_interval < 2:
        raise ValueError("samples_per_interval must be at least 2")
    out = []
    for piece in piecewise(grid, kind, include_boundary):
        t = np.linspace(piece.lo, piece.hi, samples_per_interval)
        err = np.abs(np.asarray(sampler(t), dtype=float) - piece.poly(t))
        out.append((piece.j, float(np.max(err))))
    return out


def sup_error(grid: NonUniformGrid, sampler: Sampler, kind: MeanKind, samples_per_interval: int = DEFAULT_SAMPLES, include_boundary: bool = False) -> float:
    return max(e for _, e in interval_errors(grid, sampler, kind, samples_per_interval, include_boundary))


def operator_label(kind: MeanKind) -> str:
    return kind.label


@dataclass(frozen=True)
class OrderStudy:
    """Sup errors per refinement level and the observed orders ``log2(E_{s-1}/E_s)``.

    ``flagged[s-1]`` is set when either error of the ratio sits at the
    rounding floor; the corresponding order is NaN.
    """

    errors: list[float]
    orders: list[float]
    levels: int
    operator: str
    flagged: list[bool] = field(default_factory=list)
    h_max: list[float] = field(default_factory=list)


def _error_floor(grid: NonUniformGrid) -> float:
    return 1e3 * np.finfo(float).eps * max(1.0, float(np.max(np.abs(grid.f))))


def observed_orders(errors: Sequence[float], floors: Sequence[float]) -> tuple[list[float], list[bool]]:
    orders, flagged = [], []
    for s in range(1, len(errors)):
        prev, cur = errors[s - 1], errors[s]
        if prev <= floors[s - 1] or cur <= floors[s]:
            orders.append(math.nan)
            flagged.append(True)
        else:
            orders.append(math.log2(prev / cur))
            flagged.append(False)
    return orders, flagged


def order_study(base: NonUniformGrid, sampler: Sampler, kind: MeanKind, levels: int = 5, samples_per_interval: int = DEFAULT_SAMPLES) -> OrderStudy:
    if levels < 1:
        raise ValueError("levels must be at least 1")
    grid = base
    errors, floors, h_max = [], [], []
    for s in range(levels + 1):
        if s:
            grid = refine_dyadic(grid, sampler)
        errors.append(sup_error(grid, sampler, kind, samples_per_interval))
        floors.append(_error_floor(grid))
        h_max.append(float(np.max(grid.spacings)))
    orders, flagged = observed_orders(errors, floors)
    return OrderStudy(errors, orders, levels, operator_label(kind), flagged, h_max)


# ---------------------------------------------------------------------------
# jump discontinuities


def jump_interval(grid: NonUniformGrid, location: float) -> int:
    """Interval ``[x_k, x_{k+1}]`` holding the jump, for functions continuous from the left."""
    k = int(np.searchsorted(grid.x, location, side="right")) - 1
    if not 0 <= k < len(grid.x) - 1:
        raise ValueError(f"jump at {location!r} lies outside the grid")
    return k


def jump_adjacent_intervals(grid: NonUniformGrid, location: float) -> tuple[int, int]:
    """The two intervals next to the jump; each one's stencil sees the jump in an outer interval."""
    k = jump_interval(grid, location)
    left, right = k - 1, k + 1
    if left not in grid.interior_intervals or right not in grid.interior_intervals:
        raise ValueError("the jump is too close to the grid boundary")
    return left, right


@dataclass(frozen=True)
class AdjacentLevel:
    """Behaviour of one reconstruction on the jump-adjacent intervals at one level."""

    level: int
    intervals: tuple[int, int]
    sup_error: float
    within_band: bool
    band_excess: float


def adjacent_behaviour(grid: NonUniformGrid, sampler: Sampler, kind: MeanKind, location: float, margin: float = 0.1, samples_per_interval: int = 200, level: int = 0) -> AdjacentLevel:
    """Sup error and overshoot of the reconstruction on the jump-adjacent intervals.

    The band for each interval is ``[min - margin, max + margin]`` of the two
    data values at its ends; ``band_excess`` is the largest distance by which
    the curve leaves its band (zero when it stays inside).
    """
    intervals = jump_adjacent_intervals(grid, location)
    err, excess = 0.0, 0.0
    for j in intervals:
        poly = reconstruct(grid.stencil(j), kind)
        t = np.linspace(grid.x[j], grid.x[j + 1], samples_per_interval)
        r = poly(t)
        err = max(err, float(np.max(np.abs(np.asarray(sampler(t)) - r))))
        lo = min(grid.f[j], grid.f[j + 1]) - margin
        hi = max(grid.f[j], grid.f[j + 1]) + margin
        excess = max(excess, float(np.max(r - hi)), float(np.max(lo - r)))
    return AdjacentLevel(level, intervals, err, excess <= 0, max(excess, 0.0))


def adjacent_study(base: NonUniformGrid, sampler: Sampler, kind: MeanKind, location: float, levels: int = 4, margin: float = 0.1, samples_per_interval: int = 200) -> list[AdjacentLevel]:
    grid, out = base, []
    for s in range(levels + 1):
        if s:
            grid = refine_dyadic(grid, sampler)
        out.append(adjacent_behaviour(grid, sampler, kind, location, margin, samples_per_interval, s))
    return out


def curve_distance(grid: NonUniformGrid, a: MeanKind, b: MeanKind, intervals: Sequence[int], samples_per_interval: int = 200) -> float:
    """Sup distance between two reconstructions over the given intervals."""
    dist = 0.0
    for j in intervals:
        st = grid.stencil(j)
        t = np.linspace(grid.x[j], grid.x[j + 1], samples_per_interval)
        dist = max(dist, float(np.max(np.abs(reconstruct(st, a)(t) - reconstruct(st, b)(t)))))
    return dist
