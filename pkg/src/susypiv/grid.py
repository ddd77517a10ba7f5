"""Uniform evaluation grids."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MAX_POINTS = 10**7


@dataclass(frozen=True)
class Grid:
    """Closed uniform grid starting at ``xmin`` with spacing ``step``.

    The last point is the largest ``xmin + k*step`` not exceeding ``xmax``
    (up to rounding slack), so non-commensurate bounds simply truncate.
    """

    xmin: float
    xmax: float
    step: float

    def __post_init__(self):
        if not (math.isfinite(self.xmin) and math.isfinite(self.xmax)):
            raise ValueError("grid endpoints must be finite")
        if self.xmax <= self.xmin:
            raise ValueError("xmax must exceed xmin")
        if self.step <= 0.0:
            raise ValueError("step must be positive")
        if (self.xmax - self.xmin) / self.step > MAX_POINTS:
            raise ValueError(f"grid too fine: more than {MAX_POINTS} points")

    @property
    def n_points(self) -> int:
        return int(math.floor((self.xmax - self.xmin) / self.step + 1e-9)) + 1

    def points(self) -> np.ndarray:
        return self.xmin + self.step * np.arange(self.n_points)
