#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Provides the norms used to normalise the directions of a decomposition.

Functions are represented by coefficient vectors over a Faber-Schauder basis and
are evaluated on a dyadic grid before a grid norm is taken.  Several functions
are handled at once: every routine takes a matrix with one coefficient vector per
row.
"""
import enum
import itertools
import math
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from gaussfield.dyadic.basis import basis_matrix
from gaussfield.dyadic.dyadicindex import DyadicIndex
from gaussfield.dyadic.grid import grid_points
from gaussfield.kernels.basemeasure import BaseMeasure, Lebesgue, midpoint_rule
from gaussfield.utils.exceptions import DomainException

GRID_PADDING = 2
"""Grid norms of level-k_max expansions are taken at resolution k_max + 2."""

STENCIL_RADIUS = 4
"""Chebyshev radius of the full pair stencil of Hölder seminorms in n >= 2."""

VARIATION_PADDING = 2
"""Midpoint cells per axis for total variation are 2^(k_max + VARIATION_PADDING)."""


class NormMode(str, enum.Enum):
    """The norm in which the directions of a decomposition are normalised."""

    GRID_HOELDER = "grid-hoelder"
    """Maximum of the sup norm and the alpha-Hölder seminorm on a dyadic grid."""

    COEFFICIENT_EUCLIDEAN = "coefficient-euclidean"
    """Euclidean norm of the coefficient vector."""

    TOTAL_VARIATION = "total-variation"
    """Total variation of a measure with a density against the base measure."""


def _stencil_offsets(dim: int, side: int) -> Iterator[Tuple[int, ...]]:
    if dim == 1:
        for step in range(1, side):
            yield (step,)
        return
    seen = set()
    radius = range(-STENCIL_RADIUS, STENCIL_RADIUS + 1)
    for offset in itertools.product(radius, repeat=dim):
        nonzero = [value for value in offset if value != 0]
        if nonzero and nonzero[0] > 0:
            seen.add(offset)
            yield offset
    for axis in range(dim):
        for step in range(STENCIL_RADIUS + 1, side):
            offset = tuple(step if i == axis else 0 for i in range(dim))
            if offset not in seen:
                yield offset


def _shift_slices(offset: Sequence[int]) -> Tuple[Tuple[slice, ...], Tuple[slice, ...]]:
    ahead: List[slice] = [slice(None)]
    behind: List[slice] = [slice(None)]
    for value in offset:
        if value >= 0:
            ahead.append(slice(value, None))
            behind.append(slice(None, -value if value else None))
        else:
            ahead.append(slice(None, value))
            behind.append(slice(-value, None))
    return tuple(ahead), tuple(behind)


def grid_holder_seminorm(
    values: np.ndarray, dim: int, resolution: int, gamma: float
) -> np.ndarray:
    """Hölder seminorms of functions tabulated on a dyadic grid.

    In one dimension all pairs of nodes are compared.  In higher dimensions the
    pairs are those within Chebyshev distance four cells plus all axis-aligned
    pairs.

    Args:
        values: Array of shape ``(B, N)`` with row-major grid values, or ``(N,)``
        dim: The dimension
        resolution: The grid resolution
        gamma: The Hölder exponent in (0, 1]

    Returns:
        One seminorm per row, a 0-d array for a single function

    Raises:
        DomainException: If gamma is out of range or the grid is empty
    """
    if not 0.0 < gamma <= 1.0:
        raise DomainException(f"gamma must lie in (0, 1], got {gamma}")
    array = np.asarray(values, dtype=float)
    single = array.ndim == 1
    array = np.atleast_2d(array)
    side = (1 << resolution) + 1
    if array.shape[1] == 0:
        raise DomainException("empty grid")
    if array.shape[1] != side ** dim:
        raise DomainException(
            f"{array.shape[1]} values do not fill a resolution-{resolution} grid "
            f"in dimension {dim}"
        )
    cube = array.reshape((array.shape[0],) + (side,) * dim)
    spacing = 1.0 / (side - 1)
    result = np.zeros(array.shape[0])
    for offset in _stencil_offsets(dim, side):
        ahead, behind = _shift_slices(offset)
        difference = np.abs(cube[ahead] - cube[behind])
        if difference.size == 0:
            continue
        distance = math.sqrt(sum(value * value for value in offset)) * spacing
        largest = difference.reshape(array.shape[0], -1).max(axis=1)
        result = np.maximum(result, largest / distance ** gamma)
    return result[0] if single else result


def grid_hoelder_norms(
    coefficients: np.ndarray,
    indices: Sequence[DyadicIndex],
    alpha: float,
    k_max: int,
) -> np.ndarray:
    """Grid Hölder norms of expansions in the renormalised basis.

    Args:
        coefficients: Array of shape ``(B, M)``
        indices: The M indices of the basis
        alpha: The renormalisation and Hölder exponent
        k_max: The maximal level of the basis

    Returns:
        ``max(sup |f|, [f]_alpha)`` at resolution k_max + 2, one per row
    """
    dim = indices[0].dim
    resolution = k_max + GRID_PADDING
    values = np.atleast_2d(coefficients) @ basis_matrix(
        indices, alpha, grid_points(dim, resolution)
    )
    supremum = np.abs(values).max(axis=1)
    return np.maximum(supremum, grid_holder_seminorm(values, dim, resolution, alpha))


def euclidean_norms(coefficients: np.ndarray) -> np.ndarray:
    """Euclidean norms of coefficient vectors.

    Args:
        coefficients: Array of shape ``(B, M)``

    Returns:
        One norm per row
    """
    return np.linalg.norm(np.atleast_2d(coefficients), axis=1)


def _piecewise_linear_variation(nodal: np.ndarray, spacing: float) -> np.ndarray:
    left = nodal[:, :-1]
    right = nodal[:, 1:]
    magnitude = np.abs(left) + np.abs(right)
    same_sign = left * right >= 0.0
    safe = np.where(magnitude > 0.0, magnitude, 1.0)
    crossing = spacing * (left ** 2 + right ** 2) / (2.0 * safe)
    cells = np.where(same_sign, magnitude * spacing / 2.0, crossing)
    return cells.sum(axis=1)


def total_variation_norms(
    density_coefficients: np.ndarray,
    indices: Sequence[DyadicIndex],
    base: BaseMeasure,
    k_max: int,
    quadrature: Optional[Tuple[np.ndarray, np.ndarray]] = None,
) -> np.ndarray:
    """Total variation of measures with densities in the plain hat basis.

    One-dimensional Lebesgue densities are piecewise linear on the level-k_max
    cells; each cell is integrated in closed form, locating a sign change at the
    root of the linear piece.  Other bases integrate ``|density|`` with their
    quadrature, Lebesgue measure in n >= 2 with a padded midpoint rule.

    Args:
        density_coefficients: Array of shape ``(B, M)``
        indices: The M indices of the plain hat basis
        base: The base measure
        k_max: The maximal level of the basis
        quadrature: Nodes and weights overriding the default rule

    Returns:
        One total variation per row
    """
    coefficients = np.atleast_2d(density_coefficients)
    dim = indices[0].dim
    if quadrature is None and isinstance(base, Lebesgue) and dim == 1:
        nodal = coefficients @ basis_matrix(indices, None, grid_points(1, k_max))
        return _piecewise_linear_variation(nodal, 1.0 / (1 << k_max))
    if quadrature is None:
        if isinstance(base, Lebesgue):
            quadrature = midpoint_rule(dim, 1 << (k_max + VARIATION_PADDING))
        else:
            quadrature = base.quadrature(k_max)
    nodes, weights = quadrature
    values = coefficients @ basis_matrix(indices, None, nodes)
    return np.abs(values) @ weights
