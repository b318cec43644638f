#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Provides the Mercer eigendecomposition of a kernel by the Nyström method.

The integral operator ``f -> int f(x) c(x, .) dx`` is discretised with the
composite midpoint rule.  The eigenvectors of ``W^1/2 K W^1/2`` rescaled by
``W^-1/2`` give eigenfunction values at the nodes that are orthonormal in the
weighted inner product; between nodes the eigenfunctions are interpolated
linearly.  Samples of the Karhunen-Loève expansion serve as an oracle for the
covariance of the tensor-basis sampler.
"""
from __future__ import annotations

import dataclasses
import logging
from typing import Optional, Tuple

import numpy as np
from scipy.interpolate import RegularGridInterpolator
from scipy.linalg import eigh

from gaussfield.dyadic.grid import check_in_cube
from gaussfield.kernels.basemeasure import midpoint_rule
from gaussfield.kernels.kernelspec import KernelSpec, kernel_matrix
from gaussfield.utils.exceptions import (
    CapExceededException,
    DomainException,
    NotPositiveSemidefiniteException,
)
from gaussfield.utils.randomness import check_seed, standard_normals

_LOGGER = logging.getLogger(__name__)

EIGENVALUE_TOLERANCE = 1e-10
SYMMETRY_TOLERANCE = 1e-12
MAX_NODES = 4096
SAMPLE_CHUNK = 4096
"""Samples evaluated at once by `nystrom_sample_at`."""


@dataclasses.dataclass(frozen=True)
class NystromDecomposition:
    """Eigenpairs of a discretised covariance operator."""

    grid: np.ndarray
    """Midpoint nodes of shape ``(N, n)``."""

    weights: np.ndarray
    eigenvalues: np.ndarray
    """Nonincreasing eigenvalues, negative round-off clamped to zero."""

    eigenvectors: np.ndarray
    """Column i holds the node values of eigenfunction i."""

    cells: int
    """Midpoint cells per axis."""

    @property
    def dim(self) -> int:
        """The dimension of the domain.

        Returns:
            The number of coordinates of the nodes
        """
        return self.grid.shape[1]

    def eigenfunctions(
        self, points: np.ndarray, terms: Optional[int] = None
    ) -> np.ndarray:
        """Evaluate the leading eigenfunctions by linear interpolation.

        Outside the outermost nodes the interpolant is extended linearly.

        Args:
            points: Points of the unit cube
            terms: The number of leading eigenfunctions, all by default

        Returns:
            Array of shape ``(terms, m)``
        """
        points = check_in_cube(points, self.dim)
        terms = self.eigenvalues.shape[0] if terms is None else terms
        axis = (np.arange(self.cells, dtype=float) + 0.5) / self.cells
        shape = (self.cells,) * self.dim + (terms,)
        table = self.eigenvectors[:, :terms].reshape(shape)
        interpolator = RegularGridInterpolator(
            (axis,) * self.dim, table, bounds_error=False, fill_value=None
        )
        return np.asarray(interpolator(points)).reshape(points.shape[0], terms).T


def nystrom_mercer(
    spec: KernelSpec, grid_size: int, max_nodes: int = MAX_NODES
) -> NystromDecomposition:
    """Discretise a kernel operator and diagonalise it.

    Args:
        spec: A pointwise kernel
        grid_size: Midpoint cells per axis
        max_nodes: The maximal number of nodes

    Returns:
        The decomposition

    Raises:
        DomainException: If grid_size is below 2 or the kernel matrix is not
            symmetric
        NotPositiveSemidefiniteException: If an eigenvalue is below
            ``-1e-10`` times the largest
    """
    if grid_size < 2:
        raise DomainException(f"grid size must be at least 2, got {grid_size}")
    if grid_size ** spec.dim > max_nodes:
        raise CapExceededException(
            f"{grid_size ** spec.dim} Nyström nodes exceed the cap {max_nodes}"
        )
    grid, weights = midpoint_rule(spec.dim, grid_size)
    matrix = kernel_matrix(spec, grid, grid)
    asymmetry = float(np.abs(matrix - matrix.T).max())
    if asymmetry > SYMMETRY_TOLERANCE * max(1.0, float(np.abs(matrix).max())):
        raise DomainException(f"kernel matrix is not symmetric ({asymmetry:.3e})")
    root = np.sqrt(weights)
    values, vectors = eigh(root[:, None] * matrix * root[None, :])
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = vectors[:, order] / root[:, None]
    scale = max(1.0, float(values[0]))
    if values[-1] < -EIGENVALUE_TOLERANCE * scale:
        raise NotPositiveSemidefiniteException(
            f"Nyström eigenvalue {values[-1]:.3e} is negative"
        )
    _LOGGER.info(
        "Nyström decomposition on %d nodes, eigenvalue sum %.12g",
        grid.shape[0],
        float(np.sum(values)),
    )
    return NystromDecomposition(
        grid=grid,
        weights=weights,
        eigenvalues=np.clip(values, 0.0, None),
        eigenvectors=vectors,
        cells=grid_size,
    )


def nystrom_coefficients(
    nd: NystromDecomposition,
    seed: int,
    n: int,
    first_stream: int = 0,
    terms: Optional[int] = None,
) -> np.ndarray:
    """The Karhunen-Loève coefficients ``sqrt(lambda_i) xi_i`` of samples.

    Args:
        nd: The decomposition
        seed: The 64-bit run seed
        n: The number of samples
        first_stream: The stream of the first sample
        terms: The number of leading terms, all by default

    Returns:
        Array of shape ``(n, terms)``
    """
    seed = check_seed(seed)
    total = nd.eigenvalues.shape[0]
    terms = total if terms is None else terms
    scale = np.sqrt(nd.eigenvalues[:terms])
    coefficients = np.zeros((n, terms))
    for row in range(n):
        xi = standard_normals(seed, first_stream + row, total)
        coefficients[row] = scale * xi[:terms]
    return coefficients


def nystrom_sample_at(
    nd: NystromDecomposition,
    points: np.ndarray,
    seed: int,
    n: int,
    stream: int = 0,
    terms: Optional[int] = None,
) -> np.ndarray:
    """Evaluate Karhunen-Loève samples at points.

    Sample s uses the stream ``stream + s``.

    Args:
        nd: The decomposition
        points: Array of shape ``(m, n)``
        seed: The 64-bit run seed
        n: The number of samples
        stream: The stream of the first sample
        terms: The number of leading terms, all by default

    Returns:
        Array of shape ``(n, m)``
    """
    functions = nd.eigenfunctions(points, terms)
    values = np.zeros((n, functions.shape[1]))
    for start in range(0, n, SAMPLE_CHUNK):
        count = min(SAMPLE_CHUNK, n - start)
        chunk = nystrom_coefficients(nd, seed, count, stream + start, terms)
        values[start : start + count] = chunk @ functions
    return values


def nystrom_norm_square(
    nd: NystromDecomposition, xi: np.ndarray
) -> Tuple[float, float]:
    """Both sides of ``|theta|^2 = sum lambda_i xi_i^2`` for one sample.

    Args:
        nd: The decomposition
        xi: Standard normal variates, one per eigenpair

    Returns:
        The weighted squared norm of the node values and ``sum lambda_i xi_i^2``
    """
    xi = np.asarray(xi, dtype=float).reshape(-1)
    if xi.shape[0] != nd.eigenvalues.shape[0]:
        raise DomainException(
            f"expected {nd.eigenvalues.shape[0]} variates, got {xi.shape[0]}"
        )
    coefficients = np.sqrt(nd.eigenvalues) * xi
    nodes = nd.eigenvectors @ coefficients
    return float(np.dot(nd.weights, nodes ** 2)), float(np.sum(coefficients ** 2))
