#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Besov-type diagnostics of covariance kernels.

Two routes are offered.  The level sums collect the absolute tensor coefficients
of the kernel against gamma-renormalised coefficient functionals, grouped by the
finer of the two levels; geometric decay of the sums signals summable
coefficients.  The norm estimate integrates a grid modulus of continuity of the
kernel in L1 over a logarithmic grid of step lengths.
"""
import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp
from scipy.integrate import trapezoid

from gaussfield.decomp.tensorcoefficients import DEFAULT_CAP, cached_indices, check_cap
from gaussfield.dyadic.dyadicindex import index_levels
from gaussfield.dyadic.functionals import functional_matrix
from gaussfield.dyadic.grid import grid_points
from gaussfield.kernels.kernelspec import KernelSpec, kernel_matrix
from gaussfield.utils.exceptions import CapExceededException, DomainException

_LOGGER = logging.getLogger(__name__)

DEFAULT_INTEGRABILITY = 2.0
"""The integrability p of the renormalisation ``2^{(gamma - n/p) k}``."""

DEFAULT_MODULUS_RESOLUTION = 7
"""Nodes per axis of the modulus grid are 2^resolution + 1."""

MAX_MODULUS_POINTS = 1 << 22


def _check_gamma(gamma: float) -> float:
    if not 0.0 < gamma < 1.0:
        raise DomainException(f"gamma must lie in (0, 1), got {gamma}")
    return float(gamma)


def renormalised_coefficients(
    spec: KernelSpec,
    dim: int,
    k_max: int,
    gamma: float,
    integrability: float = DEFAULT_INTEGRABILITY,
    cap: int = DEFAULT_CAP,
) -> Tuple[np.ndarray, np.ndarray]:
    """Tensor coefficients against gamma-renormalised functionals.

    Args:
        spec: A pointwise kernel
        dim: The dimension
        k_max: The maximal level
        gamma: The smoothness exponent in (0, 1)
        integrability: The exponent p, ``math.inf`` for the plain Hölder scaling
        cap: The maximal number of basis functions

    Returns:
        The coefficient matrix and the level of every index
    """
    gamma = _check_gamma(gamma)
    if not integrability >= 1.0:
        raise DomainException(f"integrability must be at least 1, got {integrability}")
    check_cap(dim, k_max, cap)
    indices = cached_indices(dim, k_max)
    levels = index_levels(indices)
    exponent = gamma - dim / integrability
    weights = functional_matrix(indices, None, k_max)
    scaled = sp.diags(np.exp2(exponent * levels)) @ weights
    grid = grid_points(dim, k_max)
    half = scaled @ kernel_matrix(spec, grid, grid)
    return scaled @ half.T, levels


def level_sums(matrix: np.ndarray, levels: np.ndarray) -> np.ndarray:
    """Sum absolute coefficients by the finer level of each pair.

    Args:
        matrix: The coefficient matrix
        levels: The level of every row and column

    Returns:
        ``S_K`` for K = 0 to the largest level
    """
    finer = np.maximum(levels[:, None], levels[None, :])
    return np.bincount(
        finer.reshape(-1),
        weights=np.abs(matrix).reshape(-1),
        minlength=int(levels.max(initial=0)) + 1,
    )


def besov_partial_sums(
    spec: KernelSpec,
    dim: int,
    k_max: int,
    gamma: float,
    integrability: float = DEFAULT_INTEGRABILITY,
    cap: int = DEFAULT_CAP,
) -> np.ndarray:
    """Per-level sums of renormalised tensor coefficients of a kernel.

    Args:
        spec: A pointwise kernel
        dim: The dimension
        k_max: The maximal level
        gamma: The smoothness exponent in (0, 1)
        integrability: The exponent p of the renormalisation
        cap: The maximal number of basis functions

    Returns:
        The non-negative sums ``S_0, ..., S_{k_max}``
    """
    matrix, levels = renormalised_coefficients(
        spec, dim, k_max, gamma, integrability, cap
    )
    sums = level_sums(matrix, levels)
    _LOGGER.debug("Level sums for gamma=%g: %s", gamma, sums)
    return sums


def level_ratios(sums: np.ndarray) -> np.ndarray:
    """Ratios ``S_{K+1} / S_K`` of consecutive level sums.

    Args:
        sums: The level sums

    Returns:
        One ratio per consecutive pair, infinity after a vanishing sum
    """
    sums = np.asarray(sums, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(sums[:-1] > 0.0, sums[1:] / sums[:-1], math.inf)


def default_t_grid(
    resolution: int = DEFAULT_MODULUS_RESOLUTION, nodes: int = 33
) -> np.ndarray:
    """A logarithmic grid of step lengths from one grid cell to 1.

    Args:
        resolution: The modulus grid resolution
        nodes: The number of step lengths

    Returns:
        Geometrically spaced lengths in (0, 1]
    """
    return np.geomspace(2.0 ** -resolution, 1.0, nodes)


def _directions(dim: int) -> List[Tuple[int, ...]]:
    width = 2 * dim
    axes = [tuple(1 if i == axis else 0 for i in range(width)) for axis in range(width)]
    diagonal = tuple([1] * width)
    anti_diagonal = tuple([1] * dim + [-1] * dim)
    return axes + [diagonal, anti_diagonal]


def _shifted_difference(cube: np.ndarray, direction: Sequence[int], step: int) -> float:
    ahead = []
    behind = []
    for value in direction:
        shift = value * step
        if shift >= 0:
            ahead.append(slice(shift, None))
            behind.append(slice(None, -shift if shift else None))
        else:
            ahead.append(slice(None, shift))
            behind.append(slice(-shift, None))
    difference = cube[tuple(ahead)] - cube[tuple(behind)]
    return float(np.sum(np.abs(difference)))


def modulus_of_continuity(
    values: np.ndarray, dim: int, resolution: int, t_grid: np.ndarray
) -> np.ndarray:
    """The grid L1 modulus of continuity of a kernel table.

    Shifts run along the 2n coordinate axes of the product cube and along its
    diagonal ``(h, h)`` and anti-diagonal ``(h, -h)``.  For every direction the
    running maximum of the L1 differences is interpolated linearly in the step
    length, starting from zero at length zero.

    Args:
        values: Kernel values on the product grid, shape ``(G,) * 2n``
        dim: The dimension n of each factor
        resolution: The grid resolution, ``G = 2^resolution + 1``
        t_grid: The step lengths to evaluate

    Returns:
        ``omega(t)`` for every t
    """
    side = (1 << resolution) + 1
    cell = 1.0 / (side - 1)
    volume = cell ** (2 * dim)
    result = np.zeros(len(t_grid))
    for direction in _directions(dim):
        length = math.sqrt(sum(value * value for value in direction)) * cell
        steps = np.arange(1, side)
        differences = volume * np.array(
            [_shifted_difference(values, direction, int(step)) for step in steps]
        )
        envelope = np.maximum.accumulate(differences)
        lengths = np.concatenate([[0.0], steps * length])
        curve = np.interp(t_grid, lengths, np.concatenate([[0.0], envelope]))
        result = np.maximum(result, curve)
    return result


def besov_norm_estimate(
    spec: KernelSpec,
    gamma: float,
    t_grid: Optional[np.ndarray] = None,
    resolution: int = DEFAULT_MODULUS_RESOLUTION,
    max_points: int = MAX_MODULUS_POINTS,
) -> float:
    """Estimate ``|c|_{L1} + int_0^1 t^-gamma omega(c, t) dt / t``.

    The L1 norm uses the trapezoidal rule on the product grid; the integral uses
    the trapezoidal rule in log t over the given step lengths.

    Args:
        spec: A pointwise kernel
        gamma: The smoothness exponent in (0, 1)
        t_grid: Increasing step lengths in (0, 1]
        resolution: The resolution of the kernel table
        max_points: The maximal size of the kernel table

    Returns:
        The estimate

    Raises:
        CapExceededException: If the kernel table is too large
    """
    gamma = _check_gamma(gamma)
    dim = spec.dim
    if t_grid is None:
        t_grid = default_t_grid(resolution)
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.shape[0] < 2 or np.any(np.diff(t_grid) <= 0.0):
        raise DomainException("t_grid must hold at least two increasing lengths")
    if t_grid[0] <= 0.0 or t_grid[-1] > 1.0:
        raise DomainException("step lengths must lie in (0, 1]")
    side = (1 << resolution) + 1
    if side ** (2 * dim) > max_points:
        raise CapExceededException(
            f"kernel table of {side ** (2 * dim)} values exceeds {max_points}"
        )
    grid = grid_points(dim, resolution)
    values = kernel_matrix(spec, grid, grid).reshape((side,) * (2 * dim))
    rule = np.ones(side)
    rule[[0, -1]] = 0.5
    weights = rule / (side - 1)
    l1_norm = np.abs(values)
    for _ in range(2 * dim):
        l1_norm = np.tensordot(l1_norm, weights, axes=([0], [0]))
    omega = modulus_of_continuity(values, dim, resolution, t_grid)
    integrand = t_grid ** -gamma * omega
    integral = float(trapezoid(integrand, np.log(t_grid)))
    _LOGGER.debug("L1 norm %.6g, modulus integral %.6g", float(l1_norm), integral)
    return float(l1_norm) + integral
