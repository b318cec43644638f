#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Hölder regularity diagnostics of functions tabulated on dyadic grids."""
import enum
import logging
import math
from typing import List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from gaussfield.decomp.norms import grid_holder_seminorm
from gaussfield.utils.exceptions import DomainException

_LOGGER = logging.getLogger(__name__)

MIN_EXPONENT_RESOLUTION = 4
"""Smallest grid resolution that leaves lags for the exponent regression."""


class IncrementStatistic(str, enum.Enum):
    """How the increments of one lag are summarised."""

    MAX = "max"
    """The largest absolute increment."""

    ROOT_MEAN_SQUARE = "root-mean-square"
    """The root mean square increment, free of the logarithmic factor of maxima."""


def grid_dimension(size: int, resolution: int) -> int:
    """Infer the dimension of a row-major dyadic grid.

    Args:
        size: The number of values
        resolution: The grid resolution

    Returns:
        n with ``(2^resolution + 1)^n == size``

    Raises:
        DomainException: If no dimension fits
    """
    if size == 0:
        raise DomainException("empty grid")
    side = (1 << resolution) + 1
    dim = max(1, round(math.log(size) / math.log(side)))
    if side ** dim != size:
        raise DomainException(
            f"{size} values do not fill a resolution-{resolution} grid"
        )
    return dim


def holder_seminorm(
    grid_values: np.ndarray, resolution: int, gamma: float
) -> float:
    """The gamma-Hölder seminorm of grid values.

    In one dimension all node pairs are compared; in higher dimensions pairs
    within four cells in every coordinate and all axis-aligned pairs.

    Args:
        grid_values: Row-major values from `field_on_grid`
        resolution: The grid resolution
        gamma: The exponent in (0, 1]

    Returns:
        The largest difference quotient
    """
    values = np.asarray(grid_values, dtype=float).reshape(-1)
    dim = grid_dimension(values.shape[0], resolution)
    return float(grid_holder_seminorm(values, dim, resolution, gamma))


def lag_increments(
    grid_values: np.ndarray, resolution: int, lag_level: int
) -> np.ndarray:
    """Absolute increments at lag 2^-lag_level along every axis.

    Increments start at every node, so increments of one lag overlap.

    Args:
        grid_values: Row-major grid values
        resolution: The grid resolution
        lag_level: The lag level, at most the resolution

    Returns:
        All increments as a flat array
    """
    values = np.asarray(grid_values, dtype=float).reshape(-1)
    dim = grid_dimension(values.shape[0], resolution)
    side = (1 << resolution) + 1
    cube = values.reshape((side,) * dim)
    step = 1 << (resolution - lag_level)
    parts = []
    for axis in range(dim):
        prefix = (slice(None),) * axis
        ahead = cube[prefix + (slice(step, None),)]
        behind = cube[prefix + (slice(None, -step),)]
        parts.append(np.abs(ahead - behind).reshape(-1))
    return np.concatenate(parts)


def _summary(increments: np.ndarray, statistic: IncrementStatistic) -> float:
    if statistic is IncrementStatistic.MAX:
        return float(increments.max())
    return float(np.sqrt(np.mean(increments ** 2)))


def estimate_holder_exponent(
    grid_values: np.ndarray,
    resolution: int,
    statistic: IncrementStatistic = IncrementStatistic.MAX,
    lag_levels: Optional[Sequence[int]] = None,
) -> float:
    """Estimate the Hölder exponent from the scaling of increments.

    The logarithm of the increment statistic at lag 2^-j is regressed against
    ``-j log 2``; the slope is the estimate.

    Args:
        grid_values: Row-major grid values
        resolution: The grid resolution, at least 4
        statistic: How increments of one lag are summarised
        lag_levels: The lag levels j; by default 2 to resolution - 1

    Returns:
        The slope, or infinity for a constant function

    Raises:
        DomainException: If the resolution is too small or a lag level is invalid
    """
    if resolution < MIN_EXPONENT_RESOLUTION:
        raise DomainException(
            f"resolution must be at least {MIN_EXPONENT_RESOLUTION}, got {resolution}"
        )
    statistic = IncrementStatistic(statistic)
    levels = list(range(2, resolution)) if lag_levels is None else list(lag_levels)
    if len(levels) < 2 or min(levels) < 0 or max(levels) > resolution:
        raise DomainException(
            f"invalid lag levels {levels} for resolution {resolution}"
        )
    summaries = np.array(
        [
            _summary(lag_increments(grid_values, resolution, j), statistic)
            for j in levels
        ]
    )
    if np.any(summaries <= 0.0):
        _LOGGER.debug("Vanishing increments; exponent is infinite")
        return math.inf
    lags = -np.array(levels, dtype=float) * math.log(2.0)
    return float(stats.linregress(lags, np.log(summaries)).slope)


def holder_profile(
    values_by_resolution: Mapping[int, np.ndarray], gamma: float
) -> List[Tuple[int, float]]:
    """Hölder seminorms of one function tabulated at several resolutions.

    Args:
        values_by_resolution: Grid values keyed by resolution
        gamma: The exponent

    Returns:
        ``(resolution, seminorm)`` pairs in increasing resolution
    """
    profile = []
    for resolution in sorted(values_by_resolution):
        values = values_by_resolution[resolution]
        profile.append((resolution, holder_seminorm(values, resolution, gamma)))
    return profile
