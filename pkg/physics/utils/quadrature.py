"""Composite trapezoid quadrature over disjoint intervals, with a Richardson error estimate."""

from typing import Callable, List, Sequence, Tuple

import numpy as np
from scipy.integrate import trapezoid

Interval = Tuple[float, float]


def interval_grids(intervals: Sequence[Interval], points: int) -> List[np.ndarray]:
    """One uniform grid per interval; a point interval yields a single node."""
    grids = []
    for lo, hi in intervals:
        if hi == lo:
            grids.append(np.array([lo], dtype=float))
        else:
            grids.append(np.linspace(lo, hi, points))
    return grids


def is_point_support(intervals: Sequence[Interval]) -> bool:
    return len(intervals) > 0 and all(hi == lo for lo, hi in intervals)


def integrate(intervals: Sequence[Interval], points: int, integrand: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """
    Sum of trapezoid integrals of ``integrand`` over every interval.

    The integrand maps a 1-D grid of shape (n,) to an array whose LAST axis has
    length n; the result drops that axis. Point intervals only count when every
    interval is a point; each then contributes its integrand value as a unit
    weight.
    """
    grids = interval_grids(intervals, points)
    if is_point_support(intervals):
        return sum(integrand(grid)[..., 0] for grid in grids)

    total = 0.0
    for (lo, hi), grid in zip(intervals, grids):
        if hi > lo:
            total = total + trapezoid(integrand(grid), grid, axis=-1)
    return total


def refined_points(points: int) -> int:
    """Node count with half the spacing of ``points``."""
    return 2 * (points - 1) + 1


def richardson_error(coarse, fine, order: int = 2):
    """Estimated error of the fine result given results at spacing h and h/2."""
    return np.abs(np.asarray(fine) - np.asarray(coarse)) / (2 ** order - 1)
