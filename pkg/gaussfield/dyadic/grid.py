#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Uniform dyadic grids on the unit cube."""
import numpy as np

from gaussfield.utils.exceptions import CapExceededException, DomainException


def grid_shape(dim: int, resolution: int) -> tuple:
    """Shape of the grid with 2^resolution + 1 nodes per axis.

    Args:
        dim: The dimension
        resolution: The grid resolution

    Returns:
        The shape tuple
    """
    return ((1 << resolution) + 1,) * dim


def grid_points(dim: int, resolution: int, cap: int = 1 << 22) -> np.ndarray:
    """Nodes of the uniform dyadic grid in row-major order.

    The first coordinate varies slowest.

    Args:
        dim: The dimension
        resolution: The grid resolution
        cap: The maximal number of nodes

    Returns:
        An array of shape ``((2^resolution + 1)^dim, dim)``

    Raises:
        DomainException: If the resolution is negative
        CapExceededException: If the grid has more than ``cap`` nodes
    """
    if resolution < 0:
        raise DomainException(f"resolution must be non-negative, got {resolution}")
    count = ((1 << resolution) + 1) ** dim
    if count > cap:
        raise CapExceededException(
            f"grid of resolution {resolution} in dimension {dim} has {count} nodes, "
            f"cap is {cap}"
        )
    axis = np.arange((1 << resolution) + 1, dtype=float) / float(1 << resolution)
    mesh = np.meshgrid(*([axis] * dim), indexing="ij")
    return np.stack([component.reshape(-1) for component in mesh], axis=1)


def node_numbers(points: np.ndarray, resolution: int) -> np.ndarray:
    """Map points lying on the grid to their row-major node numbers.

    Args:
        points: Array of shape ``(m, dim)`` of grid nodes
        resolution: The grid resolution

    Returns:
        The integer node numbers

    Raises:
        DomainException: If a point is not a node of the grid
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    scaled = points * float(1 << resolution)
    integers = np.rint(scaled).astype(np.int64)
    if not np.array_equal(integers, scaled) or integers.min(initial=0) < 0:
        raise DomainException(
            f"points are not nodes of the resolution-{resolution} grid"
        )
    side = (1 << resolution) + 1
    if integers.max(initial=0) >= side:
        raise DomainException("points leave the unit cube")
    numbers = np.zeros(points.shape[0], dtype=np.int64)
    for axis in range(points.shape[1]):
        numbers = numbers * side + integers[:, axis]
    return numbers


def check_in_cube(points: np.ndarray, dim: int) -> np.ndarray:
    """Validate points against the unit cube.

    Args:
        points: A single point or an array of shape ``(m, dim)``
        dim: The expected dimension

    Returns:
        The points as a float array of shape ``(m, dim)``

    Raises:
        DomainException: If the shape is wrong or a point leaves [0, 1]^dim
    """
    array = np.asarray(points, dtype=float)
    if array.ndim <= 1:
        array = array.reshape(-1, dim) if array.size == dim else array.reshape(-1, 1)
    if array.shape[1] != dim:
        raise DomainException(f"expected points of dimension {dim}, got {array.shape}")
    if not np.all(np.isfinite(array)) or array.min(initial=0.0) < 0.0 or (
        array.max(initial=0.0) > 1.0
    ):
        raise DomainException("points must lie in the closed unit cube")
    return array
