#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Provides the Gaussian-covariance example of a measure-valued field.

The covariance operator maps a continuous function f to the measure
``int f(z) k N(z, Id)|_Omega dz``: every point z is represented by the standard
normal distribution centred at z, restricted to the unit cube and multiplied by
the prefactor k.  With the default prefactor ``(2 pi)^{n/2}`` the bilinear form
is the square-exponential kernel of unit scale integrated against both
functions.
"""
import logging
import math
from typing import Optional

import numpy as np
from scipy.stats import norm

from gaussfield.decomp.biorthogonalization import Decomposition, biorthogonalize
from gaussfield.decomp.norms import NormMode
from gaussfield.decomp.tensorcoefficients import (
    DEFAULT_CAP,
    BasisMeta,
    Space,
    TensorCoefficients,
    cached_indices,
    check_cap,
)
from gaussfield.dyadic.basis import basis_matrix
from gaussfield.dyadic.functionals import (
    Evaluable,
    as_point_function,
    functional_matrix,
)
from gaussfield.dyadic.grid import grid_points
from gaussfield.kernels.basemeasure import DEFAULT_RESOLUTION, Lebesgue, cell_rule
from gaussfield.kernels.kernelspec import GaussianSE, kernel_matrix
from gaussfield.utils.exceptions import DomainException

_LOGGER = logging.getLogger(__name__)

CHUNK = 1024
"""Representing measures evaluated at once."""


def default_prefactor(dim: int) -> float:
    """The prefactor turning the representing measures into the unit Gaussian kernel.

    Args:
        dim: The dimension

    Returns:
        ``(2 pi)^{dim / 2}``
    """
    return (2.0 * math.pi) ** (dim / 2.0)


def _check_prefactor(prefactor: Optional[float], dim: int) -> float:
    if prefactor is None:
        return default_prefactor(dim)
    if not prefactor > 0.0:
        raise DomainException(f"prefactor must be positive, got {prefactor}")
    return float(prefactor)


def representing_density(
    z: np.ndarray, x: np.ndarray, prefactor: Optional[float] = None
) -> np.ndarray:
    """Densities of the representing measures of points.

    Args:
        z: The represented points, shape ``(l, n)``
        x: The evaluation points, shape ``(m, n)``
        prefactor: The constant k

    Returns:
        Array of shape ``(l, m)`` with ``k N(z, Id)`` densities at x
    """
    factor = _check_prefactor(prefactor, z.shape[1])
    offsets = x[None, :, :] - z[:, None, :]
    return factor * np.prod(norm.pdf(offsets), axis=2)


def gaussian_covariance_pairing(
    eta1: Evaluable,
    eta2: Evaluable,
    dim: int = 1,
    prefactor: Optional[float] = None,
    resolution: int = DEFAULT_RESOLUTION,
) -> float:
    """The bilinear form ``<eta_2, C eta_1>`` by quadrature of representing measures.

    Args:
        eta1: The first continuous function
        eta2: The second continuous function
        dim: The dimension
        prefactor: The constant k
        resolution: Dyadic resolution of the cell quadrature

    Returns:
        ``int eta_1(z) <eta_2, k N(z, Id)|_Omega> dz``
    """
    nodes, weights = cell_rule(dim, resolution)
    first = np.asarray(as_point_function(eta1)(nodes), dtype=float).reshape(-1)
    second = np.asarray(as_point_function(eta2)(nodes), dtype=float).reshape(-1)
    integrand = weights * second
    total = 0.0
    for start in range(0, nodes.shape[0], CHUNK):
        stop = start + CHUNK
        measures = representing_density(nodes[start:stop], nodes, prefactor)
        outer = weights[start:stop] * first[start:stop]
        total += float(np.dot(outer, measures @ integrand))
    return total


def gaussian_measure_coefficients(
    dim: int,
    k_max: int,
    prefactor: Optional[float] = None,
    cap: int = DEFAULT_CAP,
) -> TensorCoefficients:
    """The coefficient matrix of the Gaussian-covariance field.

    The predual system is the plain hat basis.  The density of the image of each
    hat function is interpolated on the level-k_max grid, which gives the map from
    predual coordinates to density coordinates.

    Args:
        dim: The dimension
        k_max: The maximal level
        prefactor: The constant k
        cap: The maximal number of basis functions

    Returns:
        The measure-valued coefficients with their density map
    """
    factor = _check_prefactor(prefactor, dim)
    check_cap(dim, k_max, cap)
    indices = cached_indices(dim, k_max)
    kernel = GaussianSE(1.0, dim)
    scale = factor / default_prefactor(dim)
    nodes, weights = Lebesgue(dim).quadrature(k_max)
    weighted = basis_matrix(indices, None, nodes) * weights[None, :]
    matrix = scale * (weighted @ kernel_matrix(kernel, nodes, nodes) @ weighted.T)
    grid = grid_points(dim, k_max)
    nodal = scale * (kernel_matrix(kernel, grid, nodes) @ weighted.T)
    density_map = functional_matrix(indices, None, k_max) @ nodal
    meta = BasisMeta(dim, k_max, None, f"gaussian-measure:{factor!r}")
    return TensorCoefficients(
        meta, matrix, Space.MEASURE, Lebesgue(dim), density_map=density_map
    )


def gaussian_measure_decomposition(
    dim: int = 1,
    k_max: int = 4,
    prefactor: Optional[float] = None,
    pivot_tol: Optional[float] = None,
    cap: int = DEFAULT_CAP,
) -> Decomposition:
    """Decompose the Gaussian-covariance field on measures.

    Args:
        dim: The dimension
        k_max: The maximal level
        prefactor: The constant k
        pivot_tol: The pivot tolerance, see `biorthogonalize`
        cap: The maximal number of basis functions

    Returns:
        The decomposition; phi_i are densities against Lebesgue measure
    """
    coefficients = gaussian_measure_coefficients(dim, k_max, prefactor, cap)
    decomposition = biorthogonalize(coefficients, pivot_tol, NormMode.TOTAL_VARIATION)
    _LOGGER.info(
        "Gaussian covariance on measures: %d of %d terms",
        decomposition.size,
        coefficients.size,
    )
    return decomposition
