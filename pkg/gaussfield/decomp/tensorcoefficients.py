#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Provides the expansion of a covariance kernel in the tensor Faber-Schauder system.

For a pointwise kernel the coefficient of the pair (tau_p, tau_q) is the pairing
of the kernel with the tensor product of the two renormalised coefficient
functionals.  All functionals up to level k_max are supported on the nodes of the
resolution-k_max grid, so the whole matrix is ``A K A^T`` with the sparse atom
weight matrix A and the kernel matrix K of the grid.

For white noise the predual elements are continuous functions, expanded in the
plain hat functions, and the matrix is the Gram matrix of those functions in
L2 of the base measure.
"""
import enum
import functools
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from gaussfield.dyadic.basis import basis_matrix, check_alpha
from gaussfield.dyadic.dyadicindex import DyadicIndex, basis_size, enumerate_dyadic
from gaussfield.dyadic.functionals import functional_matrix
from gaussfield.dyadic.grid import grid_points
from gaussfield.dyadic.squareordering import OrderingMode, SquareOrdering
from gaussfield.kernels.basemeasure import BaseMeasure, gram_matrix
from gaussfield.kernels.kernelspec import KernelSpec, WhiteNoise, kernel_matrix
from gaussfield.utils.exceptions import CapExceededException, DomainException

_LOGGER = logging.getLogger(__name__)

DEFAULT_CAP = 4096
"""Default upper bound on the number of basis functions."""


class Space(str, enum.Enum):
    """The Banach space the field takes its values in."""

    HOELDER = "hoelder"
    """Hölder functions on the unit cube, predual spanned by Dirac combinations."""

    MEASURE = "measure"
    """Radon measures on the unit cube, predual spanned by continuous functions."""


@functools.lru_cache(maxsize=16)
def cached_indices(dim: int, k_max: int) -> List[DyadicIndex]:
    """Enumerate the dyadic indices once per (dim, k_max).

    Args:
        dim: The dimension
        k_max: The maximal level

    Returns:
        The ordered indices; callers must not modify the list
    """
    return enumerate_dyadic(dim, k_max)


@dataclass(frozen=True)
class BasisMeta:
    """Describes the basis a coefficient vector refers to."""

    dim: int
    k_max: int
    alpha: Optional[float]
    """Renormalisation exponent, None for the plain hat functions."""

    family: str = ""
    """The kernel in grammar form."""

    @property
    def size(self) -> int:
        """Number of basis functions.

        Returns:
            (2^k_max + 1)^dim
        """
        return basis_size(self.dim, self.k_max)

    @property
    def indices(self) -> List[DyadicIndex]:
        """The dyadic indices of the basis in enumeration order.

        Returns:
            The indices
        """
        return cached_indices(self.dim, self.k_max)


@dataclass(frozen=True)
class TensorCoefficients:
    """The symmetric coefficient matrix of a kernel in the tensor system."""

    meta: BasisMeta
    matrix: np.ndarray
    space: Space = Space.HOELDER
    base: Optional[BaseMeasure] = None
    """The base measure of measure-valued fields."""

    density_map: Optional[np.ndarray] = field(default=None, repr=False)
    """Maps predual coordinates u to the density coordinates of the image measure;
    None stands for the identity of white noise."""

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=float)
        size = self.meta.size
        if matrix.shape != (size, size):
            raise DomainException(
                f"expected a {size}x{size} matrix, got {matrix.shape}"
            )
        if not np.all(np.isfinite(matrix)):
            raise DomainException("tensor coefficients must be finite")
        matrix = (matrix + matrix.T) / 2.0
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def size(self) -> int:
        """The number M of basis functions.

        Returns:
            The matrix dimension
        """
        return self.matrix.shape[0]

    def ordering(self, mode: OrderingMode = OrderingMode.SYMMETRIC) -> SquareOrdering:
        """The square ordering of the coefficient pairs.

        Args:
            mode: The ordering mode

        Returns:
            The ordering over the M basis functions
        """
        return SquareOrdering(mode, self.size)

    def in_square_order(
        self, mode: OrderingMode = OrderingMode.SYMMETRIC
    ) -> np.ndarray:
        """Flatten the matrix along a square ordering.

        Args:
            mode: The ordering mode

        Returns:
            The entries ``matrix[i - 1, j - 1]`` in ordering sequence
        """
        pairs = np.array(list(self.ordering(mode)), dtype=np.int64).reshape(-1, 2)
        return self.matrix[pairs[:, 0] - 1, pairs[:, 1] - 1]

    @classmethod
    def from_square_order(
        cls,
        meta: BasisMeta,
        values: np.ndarray,
        mode: OrderingMode = OrderingMode.SYMMETRIC,
        **kwargs,
    ) -> "TensorCoefficients":
        """Rebuild the coefficients from a flattened square ordering.

        Args:
            meta: The basis description
            values: The flattened entries
            mode: The ordering they follow
            **kwargs: Further fields of the coefficients

        Returns:
            The coefficients
        """
        ordering = SquareOrdering(mode, meta.size)
        pairs = np.array(list(ordering), dtype=np.int64).reshape(-1, 2) - 1
        matrix = np.zeros((meta.size, meta.size))
        matrix[pairs[:, 0], pairs[:, 1]] = values
        matrix[pairs[:, 1], pairs[:, 0]] = values
        return cls(meta, matrix, **kwargs)


def check_cap(dim: int, k_max: int, cap: int) -> int:
    """Refuse bases with more than ``cap`` functions.

    Args:
        dim: The dimension
        k_max: The maximal level
        cap: The bound

    Returns:
        The basis size

    Raises:
        CapExceededException: If the basis is too large
    """
    size = basis_size(dim, k_max)
    if size > cap:
        raise CapExceededException(
            f"{size} basis functions for dim={dim}, k_max={k_max} exceed the cap {cap}"
        )
    return size


def tensor_coefficients(
    spec: KernelSpec,
    dim: int,
    k_max: int,
    alpha: Optional[float] = 0.5,
    cap: int = DEFAULT_CAP,
) -> TensorCoefficients:
    """Expand a kernel in the symmetric tensor system.

    Args:
        spec: A pointwise kernel, or a white-noise kernel
        dim: The dimension
        k_max: The maximal level
        alpha: The renormalisation exponent of the Hölder path, ignored for white
            noise
        cap: The maximal number of basis functions

    Returns:
        The M x M coefficient matrix

    Raises:
        DomainException: If the kernel dimension does not match
    """
    if spec.dim != dim:
        raise DomainException(f"kernel has dimension {spec.dim}, expected {dim}")
    check_cap(dim, k_max, cap)
    indices = cached_indices(dim, k_max)
    if isinstance(spec, WhiteNoise):
        spec.base.check()
        nodes, weights = spec.base.quadrature(k_max)
        values = basis_matrix(indices, None, nodes)
        meta = BasisMeta(dim, k_max, None, spec.describe())
        _LOGGER.debug("Gram matrix of %d hat functions", len(indices))
        return TensorCoefficients(
            meta, gram_matrix(values, weights), Space.MEASURE, spec.base
        )
    alpha = check_alpha(alpha, warn=True)
    if alpha is None:
        raise DomainException("the Hölder path needs a renormalisation exponent")
    grid = grid_points(dim, k_max)
    weights_matrix = functional_matrix(indices, alpha, k_max)
    kernel = kernel_matrix(spec, grid, grid)
    half = weights_matrix @ kernel
    matrix = weights_matrix @ half.T
    _LOGGER.debug(
        "Tensor coefficients of %s on %d functions", spec.describe(), len(indices)
    )
    return TensorCoefficients(BasisMeta(dim, k_max, alpha, spec.describe()), matrix)


def apply_cov(tc: TensorCoefficients, eta_coeffs: np.ndarray) -> np.ndarray:
    """Apply the covariance operator in coefficient space.

    Args:
        tc: The tensor coefficients
        eta_coeffs: Coordinates of a predual element

    Returns:
        The coefficients of its image over the basis

    Raises:
        DomainException: On a length mismatch
    """
    vector = np.asarray(eta_coeffs, dtype=float)
    if vector.shape[0] != tc.size:
        raise DomainException(f"expected {tc.size} coordinates, got {vector.shape[0]}")
    return tc.matrix @ vector
