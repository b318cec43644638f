#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Provides the Faber-Schauder hat functions and their Hölder renormalisation.

The function of an index tau of level k is the tensor product of the scaled hat
``psi(2^k (x_i - tau_i))``.  Multiplying it by 2^{-alpha k} gives the renormalised
function whose alpha-Hölder norm on the grid is one.  An ``alpha`` of None selects
the plain, unrenormalised system used for measure-valued fields.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from gaussfield.dyadic.dyadicindex import DyadicIndex, index_levels, index_points
from gaussfield.dyadic.grid import check_in_cube
from gaussfield.utils.exceptions import DomainException

_LOGGER = logging.getLogger(__name__)

PointFunction = Callable[[np.ndarray], np.ndarray]
"""A function evaluated on an ``(m, n)`` array of points, returning ``m`` values."""


def check_alpha(alpha: Optional[float], warn: bool = False) -> Optional[float]:
    """Validate a renormalisation exponent.

    Args:
        alpha: The exponent, None for the plain system
        warn: Log a warning for alpha = 1

    Returns:
        The validated exponent

    Raises:
        DomainException: If alpha is outside (0, 1]
    """
    if alpha is None:
        return None
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise DomainException(f"alpha must lie in (0, 1], got {alpha}")
    if warn and alpha == 1.0:
        _LOGGER.warning(
            "alpha = 1 uses the Lipschitz normalisation; the little-Lipschitz "
            "predual needs alpha < 1"
        )
    return alpha


def level_scale(level: Union[int, np.ndarray], alpha: Optional[float]) -> np.ndarray:
    """The renormalisation factor 2^{-alpha k} of a level.

    Args:
        level: A level or an array of levels
        alpha: The exponent, None for the plain system

    Returns:
        The factor, 1 for the plain system
    """
    levels = np.asarray(level, dtype=float)
    if alpha is None:
        return np.ones_like(levels)
    return np.exp2(-alpha * levels)


def eval_mother(t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """The hat function ``1 - |t|`` on [-1, 1], zero outside.

    Args:
        t: A real or an array of reals

    Returns:
        The hat values, a float for scalar input
    """
    values = np.maximum(0.0, 1.0 - np.abs(np.asarray(t, dtype=float)))
    if values.ndim == 0:
        return float(values)
    return values


@dataclass(frozen=True)
class BasisFunction:
    """A (renormalised) Faber-Schauder function."""

    index: DyadicIndex
    alpha: Optional[float] = None

    def __post_init__(self) -> None:
        check_alpha(self.alpha)

    @property
    def scale(self) -> float:
        """The renormalisation factor of the function.

        Returns:
            2^{-alpha k}, or 1 for the plain system
        """
        return float(level_scale(self.index.level, self.alpha))

    def __call__(self, points: np.ndarray) -> np.ndarray:
        return eval_basis(self, points)


def _hat_products(
    centres: np.ndarray, levels: np.ndarray, points: np.ndarray
) -> np.ndarray:
    scales = np.exp2(levels.astype(float))
    values = np.ones((centres.shape[0], points.shape[0]))
    for axis in range(points.shape[1]):
        offsets = points[None, :, axis] - centres[:, axis, None]
        values *= np.maximum(0.0, 1.0 - np.abs(scales[:, None] * offsets))
    return values


def eval_basis(b: BasisFunction, x: np.ndarray) -> Union[float, np.ndarray]:
    """Evaluate a basis function.

    Args:
        b: The basis function
        x: A point of [0, 1]^n or an array of shape ``(m, n)``

    Returns:
        ``2^{-alpha k} prod_i psi(2^k (x_i - tau_i))``; a float for a single point
        given as a vector, else an array of length m
    """
    single = np.ndim(x) <= 1 and np.size(x) == b.index.dim
    points = check_in_cube(x, b.index.dim)
    values = b.scale * _hat_products(
        b.index.point()[None, :], np.array([b.index.level]), points
    )[0]
    return float(values[0]) if single else values


def basis_matrix(
    indices: Sequence[DyadicIndex], alpha: Optional[float], points: np.ndarray
) -> np.ndarray:
    """Evaluate many basis functions at many points.

    Every entry is computed independently of the others, so the value of a
    function at a point does not depend on which other points are evaluated.

    Args:
        indices: The indices of the functions
        alpha: The renormalisation exponent, None for the plain system
        points: Array of shape ``(m, n)``

    Returns:
        Array of shape ``(len(indices), m)``
    """
    if len(indices) == 0:
        return np.zeros((0, np.shape(points)[0]))
    points = check_in_cube(points, indices[0].dim)
    levels = index_levels(indices)
    values = _hat_products(index_points(indices), levels, points)
    values *= level_scale(levels, alpha)[:, None]
    return values


def expand(
    coefficients: np.ndarray,
    indices: Sequence[DyadicIndex],
    alpha: Optional[float],
    points: np.ndarray,
    max_level: Optional[int] = None,
) -> np.ndarray:
    """Evaluate ``sum_tau c_tau f_tau`` at points.

    The terms are accumulated one function at a time in enumeration order, which
    makes the value at a point independent of the batch of points.

    Args:
        coefficients: One coefficient per index
        indices: The indices of the expansion
        alpha: The renormalisation exponent, None for the plain system
        points: Array of shape ``(m, n)``
        max_level: Only use terms up to this level

    Returns:
        The values at the points

    Raises:
        DomainException: If the coefficient vector does not match the indices
    """
    coefficients = np.asarray(coefficients, dtype=float)
    if coefficients.shape != (len(indices),):
        raise DomainException(
            f"expected {len(indices)} coefficients, got {coefficients.shape}"
        )
    matrix = basis_matrix(indices, alpha, points)
    values = np.zeros(matrix.shape[1])
    for row, index in enumerate(indices):
        if max_level is not None and index.level > max_level:
            continue
        values += coefficients[row] * matrix[row]
    return values
