"""Random stencil generators and comparison helpers shared by the tests."""

import numpy as np

from nupph.grid import Stencil


def random_spacings(rng, ratio=100.0, base=1.0):
    """Three spacings whose max/min ratio is at most ``ratio``."""
    half = np.log10(ratio) / 2
    return base * 10.0 ** rng.uniform(-half, half, size=3)


def random_stencil(rng, ratio=100.0, f=None):
    h = random_spacings(rng, ratio)
    x0 = rng.uniform(-5, 5)
    x = x0 + np.concatenate([[0.0], np.cumsum(h)])
    if f is None:
        f = rng.normal(size=4)
    elif callable(f):
        f = f(x)
    return Stencil(tuple(x), tuple(f))


def stencil_with_diffs(rng, d_left, d_right, ratio=100.0):
    """Stencil with prescribed second divided differences and random central data."""
    h0, h1, h2 = random_spacings(rng, ratio)
    x0 = rng.uniform(-5, 5)
    x = x0 + np.array([0.0, h0, h0 + h1, h0 + h1 + h2])
    f0, f1 = rng.normal(size=2)
    fm = h0 * (h0 + h1) * (d_left + f0 / (h0 * h1) - f1 / (h1 * (h0 + h1)))
    f2 = h2 * (h1 + h2) * (d_right - f0 / (h1 * (h1 + h2)) + f1 / (h1 * h2))
    return Stencil(tuple(x), (fm, f0, f1, f2))


def random_convex_stencil(rng, case, ratio=100.0):
    """Strictly convex stencil; ``case`` 1 has D_j < D_{j+1}, case 2 has D_j > D_{j+1}."""
    small = 10.0 ** rng.uniform(-1, 1)
    big = small * rng.uniform(1.05, 20.0)
    if case == 1:
        return stencil_with_diffs(rng, small, big, ratio)
    return stencil_with_diffs(rng, big, small, ratio)


def coeff_rel_error(a, b, st):
    """Largest coefficientwise error, relative to the coefficient or to the data scale.

    Coefficient ``i`` is measured against ``max(|b_i|, max|f| / span**i)`` so that
    near-zero coefficients are compared on the scale of their effect.
    """
    fscale = max(max(abs(v) for v in st.f), 1e-300)
    worst = 0.0
    for i, (ai, bi) in enumerate(zip(a, b)):
        scale = max(abs(bi), fscale / st.span**i)
        worst = max(worst, abs(ai - bi) / scale)
    return worst


def fit_cubic(st):
    """Oracle: solve the 4x4 interpolation system in centred powers directly."""
    t = np.asarray(st.x) - st.midpoint
    vander = np.vander(t, 4, increasing=True)
    return np.linalg.solve(vander, np.asarray(st.f))
