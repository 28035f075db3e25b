"""Built-in point sets and analytic samplers for the standard experiments."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConfigError
from .grid import NonUniformGrid, Sampler, build_grid, sample_grid

FIG1_POINTS = ((0.0, 10.0), (8.0, 9.0), (25.0, 12.0), (30.0, 30.0))
SINE_NODES = np.array([0, 3, 8, 11, 17, 23, 25, 30, 37, 40], dtype=float) * np.pi / 20
JUMP_LOCATION = 1.2 * np.pi


def jump_function(x):
    """``sin`` up to and including the jump location, ``cos + 10`` after it."""
    x = np.asarray(x, dtype=float)
    return np.where(x <= JUMP_LOCATION, np.sin(x), np.cos(x) + 10.0)


def quadratic(x):
    x = np.asarray(x, dtype=float)
    return 0.5 * x * x - 2.0 * x + 1.0


def cubic(x):
    x = np.asarray(x, dtype=float)
    return 0.1 * x**3 - x * x + 0.5 * x - 2.0


@dataclass(frozen=True)
class Dataset:
    name: str
    abscissas: np.ndarray
    sampler: Optional[Sampler] = None
    ordinates: Optional[np.ndarray] = None
    jump: Optional[float] = None
    description: str = ""

    def grid(self) -> NonUniformGrid:
        if self.sampler is not None:
            return sample_grid(self.abscissas, self.sampler)
        return build_grid(self.abscissas, self.ordinates)


DATASETS = {
    "fig1": Dataset(
        "fig1",
        np.array([p[0] for p in FIG1_POINTS]),
        ordinates=np.array([p[1] for p in FIG1_POINTS]),
        description="four convex points with unequal spacings",
    ),
    "sine-nonuniform": Dataset("sine-nonuniform", SINE_NODES, np.sin, description="sin on a 10-node non-uniform grid of [0, 2pi]"),
    "jump": Dataset("jump", SINE_NODES, jump_function, jump=JUMP_LOCATION, description="sin / cos+10 with a jump at 1.2pi"),
    "quadratic": Dataset("quadratic", SINE_NODES, quadratic, description="a quadratic on the sine grid"),
    "cubic": Dataset("cubic", SINE_NODES, cubic, description="a cubic on the sine grid"),
    "exp": Dataset("exp", SINE_NODES, np.exp, description="exp on the sine grid"),
}


def get_dataset(name: str) -> Dataset:
    try:
        return DATASETS[name]
    except KeyError:
        raise ConfigError(f"unknown dataset {name!r}; choose from {', '.join(sorted(DATASETS))}") from None
