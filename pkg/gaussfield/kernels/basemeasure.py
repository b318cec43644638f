#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Provides the base measures of white-noise kernels and their L2 pairings.

Three kinds of base measure exist: Lebesgue measure on the unit cube, a measure
with a non-negative density, and a finite counting measure.  Integrals against
Lebesgue measure use a composite tensor Gauss-Legendre rule on a dyadic cell
grid, which is exact for products of multilinear functions on each cell when two
nodes per axis are used.  Densities use the composite midpoint rule.
"""
from __future__ import annotations

import functools
from abc import ABCMeta, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from gaussfield.dyadic.functionals import Evaluable, as_point_function
from gaussfield.utils.exceptions import DegenerateMeasureException, DomainException

DEFAULT_RESOLUTION = 6
"""Cells per axis are 2^resolution when no resolution is given."""

DENSITY_PADDING = 4
"""Densities are integrated on 2^(resolution + DENSITY_PADDING) cells per axis."""


@functools.lru_cache(maxsize=32)
def cell_rule(
    dim: int, resolution: int, order: int = 2
) -> Tuple[np.ndarray, np.ndarray]:
    """Composite tensor Gauss-Legendre rule on the dyadic cells of the unit cube.

    Args:
        dim: The dimension
        resolution: The cube is split into 2^resolution cells per axis
        order: Gauss-Legendre nodes per axis and cell

    Returns:
        Nodes of shape ``(m, dim)`` and weights of shape ``(m,)``
    """
    reference, reference_weights = np.polynomial.legendre.leggauss(order)
    cells = 1 << resolution
    width = 1.0 / cells
    starts = np.arange(cells, dtype=float) * width
    axis_nodes = (starts[:, None] + (reference[None, :] + 1.0) * (width / 2.0)).ravel()
    axis_weights = np.tile(reference_weights * (width / 2.0), cells)
    return _tensor_rule(axis_nodes, axis_weights, dim)


@functools.lru_cache(maxsize=32)
def midpoint_rule(dim: int, cells: int) -> Tuple[np.ndarray, np.ndarray]:
    """Composite midpoint rule with ``cells`` cells per axis.

    Args:
        dim: The dimension
        cells: Cells per axis

    Returns:
        Nodes of shape ``(m, dim)`` and weights of shape ``(m,)``
    """
    axis_nodes = (np.arange(cells, dtype=float) + 0.5) / cells
    axis_weights = np.full(cells, 1.0 / cells)
    return _tensor_rule(axis_nodes, axis_weights, dim)


def _tensor_rule(
    axis_nodes: np.ndarray, axis_weights: np.ndarray, dim: int
) -> Tuple[np.ndarray, np.ndarray]:
    mesh = np.meshgrid(*([axis_nodes] * dim), indexing="ij")
    nodes = np.stack([component.reshape(-1) for component in mesh], axis=1)
    weight_mesh = np.meshgrid(*([axis_weights] * dim), indexing="ij")
    weights = np.ones(nodes.shape[0])
    for component in weight_mesh:
        weights = weights * component.reshape(-1)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


class BaseMeasure(metaclass=ABCMeta):
    """A finite positive measure on the unit cube."""

    dim: int

    @abstractmethod
    def quadrature(
        self, resolution: Optional[int] = None
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Nodes and weights integrating against the measure.

        Args:
            resolution: The dyadic resolution of the functions to be integrated

        Returns:
            Nodes of shape ``(m, dim)`` and weights of shape ``(m,)``
        """

    @property
    @abstractmethod
    def name(self) -> str:
        """The grammar name of the measure, used in file metadata."""

    def total_mass(self) -> float:
        """The mass of the unit cube.

        Returns:
            The total mass
        """
        _, weights = self.quadrature()
        return float(np.sum(weights))

    def check(self) -> None:
        """Validate the measure.

        Raises:
            DegenerateMeasureException: If the total mass is not positive
        """
        if not self.total_mass() > 0.0:
            raise DegenerateMeasureException(f"base measure {self.name} has no mass")


@dataclass(frozen=True)
class Lebesgue(BaseMeasure):
    """Lebesgue measure on [0, 1]^n."""

    dim: int = 1
    order: int = 2
    """Gauss-Legendre nodes per axis and cell."""

    def quadrature(
        self, resolution: Optional[int] = None
    ) -> Tuple[np.ndarray, np.ndarray]:
        if resolution is None:
            resolution = DEFAULT_RESOLUTION
        return cell_rule(self.dim, resolution, self.order)

    def total_mass(self) -> float:
        return 1.0

    @property
    def name(self) -> str:
        return "lebesgue"


@dataclass(frozen=True)
class Density(BaseMeasure):
    """A measure ``d(x) dx`` with a non-negative density."""

    density: Callable[[np.ndarray], np.ndarray] = field(compare=False)
    dim: int = 1
    label: str = "density"

    def quadrature(
        self, resolution: Optional[int] = None
    ) -> Tuple[np.ndarray, np.ndarray]:
        if resolution is None:
            resolution = DEFAULT_RESOLUTION
        nodes, weights = midpoint_rule(self.dim, 1 << (resolution + DENSITY_PADDING))
        values = np.asarray(self.density(nodes), dtype=float).reshape(-1)
        if np.any(values < 0.0) or not np.all(np.isfinite(values)):
            raise DegenerateMeasureException(
                f"density {self.label} is negative or not finite on the unit cube"
            )
        return nodes, weights * values

    @property
    def name(self) -> str:
        return f"density:{self.label}"


@dataclass(frozen=True)
class Counting(BaseMeasure):
    """The counting measure of a finite set of points."""

    points: Tuple[Tuple[float, ...], ...] = ()

    def __post_init__(self) -> None:
        if self.points and len({len(point) for point in self.points}) != 1:
            raise DomainException("all atoms of a counting measure need one dimension")

    @property
    def dim(self) -> int:  # type: ignore[override]
        return len(self.points[0]) if self.points else 1

    def quadrature(
        self, resolution: Optional[int] = None
    ) -> Tuple[np.ndarray, np.ndarray]:
        nodes = np.array(self.points, dtype=float).reshape(-1, self.dim)
        if nodes.size and (nodes.min() < 0.0 or nodes.max() > 1.0):
            raise DomainException(
                "atoms of a counting measure must lie in the unit cube"
            )
        return nodes, np.ones(nodes.shape[0])

    def total_mass(self) -> float:
        return float(len(self.points))

    @property
    def name(self) -> str:
        return "counting:" + ";".join(
            ",".join(repr(coord) for coord in point) for point in self.points
        )


def l2_pairing(
    base: BaseMeasure,
    f: Evaluable,
    g: Evaluable,
    resolution: Optional[int] = None,
) -> float:
    """Integrate the product of two functions against a base measure.

    For Lebesgue measure and functions that are multilinear on the cells of the
    resolution-``resolution`` grid, the default two-point rule is exact.

    Args:
        base: The base measure
        f: The first function
        g: The second function
        resolution: Dyadic resolution of the cell grid of the rule

    Returns:
        The integral of ``f g``
    """
    nodes, weights = base.quadrature(resolution)
    if nodes.shape[0] == 0:
        return 0.0
    f_values = np.asarray(as_point_function(f)(nodes), dtype=float).reshape(-1)
    g_values = np.asarray(as_point_function(g)(nodes), dtype=float).reshape(-1)
    return float(np.dot(weights, f_values * g_values))


def gram_matrix(values: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """All pairwise L2 pairings of functions tabulated at quadrature nodes.

    Args:
        values: Array of shape ``(M, m)`` with function values at the nodes
        weights: The quadrature weights

    Returns:
        The symmetric ``(M, M)`` Gram matrix
    """
    gram = (values * weights[None, :]) @ values.T
    return (gram + gram.T) / 2.0
