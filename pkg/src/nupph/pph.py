"""The nonlinear PPH reconstruction on a non-uniform stencil.

The PPH cubic is the Lagrange cubic with the weighted arithmetic mean of the
two second differences swapped for a nonlinear mean.  Equivalently, the outer
point on the side of the larger difference (the side that may hold a
singularity) is replaced by a value consistent with the nonlinear mean, and
the cubic interpolates the modified data.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .grid import SecondDiffs, Stencil, second_diffs
from .lagrange import CenteredCubic, cubic_from_mean, endpoint_from_mean, lagrange_cubic
from .means import Arithmetic, MeanKind, apply_mean, arithmetic_mean, weights


class PphCase(enum.Enum):
    REPLACE_RIGHT = "replace-right"  # |D_j| <= |D_{j+1}|: f_{j+2} is replaced
    REPLACE_LEFT = "replace-left"  # |D_j| > |D_{j+1}|: f_{j-1} is replaced

    @property
    def replaced_index(self) -> int:
        """Position inside the stencil of the point that is not interpolated."""
        return 3 if self is PphCase.REPLACE_RIGHT else 0


@dataclass(frozen=True)
class PphReconstruction:
    poly: CenteredCubic
    case: PphCase
    mean_used: float
    modified_endpoint: float


def classify(d: SecondDiffs) -> PphCase:
    if abs(d.d_left) <= abs(d.d_right):
        return PphCase.REPLACE_RIGHT
    return PphCase.REPLACE_LEFT


def modified_endpoint(st: Stencil, mean: float, case: PphCase) -> float:
    return endpoint_from_mean(st, mean, right=case is PphCase.REPLACE_RIGHT)


def pph_reconstruct(st: Stencil, kind: MeanKind) -> PphReconstruction:
    d = second_diffs(st)
    mean = apply_mean(kind, d, weights(*st.h))
    case = classify(d)
    poly = cubic_from_mean(st, d, mean, replace_right=case is PphCase.REPLACE_RIGHT)
    return PphReconstruction(poly, case, mean, modified_endpoint(st, mean, case))


def coefficient_gap(st: Stencil, kind: MeanKind) -> tuple[float, float, float, float]:
    """Difference between the PPH and Lagrange coefficients, from the closed forms.

    Every entry is a multiple of ``M_j - V`` where ``V`` is the nonlinear mean.
    """
    h0, h1, h2 = st.h
    d = second_diffs(st)
    w = weights(h0, h1, h2)
    g = arithmetic_mean(d, w) - apply_mean(kind, d, w)
    if classify(d) is PphCase.REPLACE_RIGHT:
        return (h1 * h1 / 4 * g, h1 * h1 / (4 * h0 + 2 * h1) * g, -g, -2 / (2 * h0 + h1) * g)
    return (h1 * h1 / 4 * g, -h1 * h1 / (2 * h1 + 4 * h2) * g, -g, 2 / (2 * h2 + h1) * g)


def reconstruct(st: Stencil, kind: MeanKind) -> CenteredCubic:
    """Cubic for the central interval of ``st``: Lagrange for the arithmetic kind, PPH otherwise."""
    if isinstance(kind, Arithmetic):
        return lagrange_cubic(st)
    return pph_reconstruct(st, kind).poly
