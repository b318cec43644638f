#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Provides the covariance kernel families and the kernel grammar.

Kernels are written as ``family:parameters`` in configuration files and on the
command line::

    exp-alpha:0.5
    gaussian-se:1.0
    white-noise:lebesgue
    white-noise:counting:0;0.5;1        (points separated by ';',
                                         coordinates by ',')
"""
from __future__ import annotations

import math
from abc import ABCMeta, abstractmethod
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
from scipy.interpolate import RegularGridInterpolator
from scipy.spatial.distance import cdist

from gaussfield.dyadic.grid import check_in_cube
from gaussfield.kernels.basemeasure import BaseMeasure, Counting, Lebesgue
from gaussfield.utils.exceptions import (
    ConfigurationException,
    DomainException,
    MeasureValuedKernelException,
)


class KernelSpec(metaclass=ABCMeta):
    """A symmetric positive-semidefinite covariance kernel on the unit cube."""

    dim: int

    @property
    def pointwise(self) -> bool:
        """Whether the kernel has point values.

        Returns:
            False for measure-valued kernels
        """
        return True

    @abstractmethod
    def matrix(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Kernel values for all pairs of two point sets.

        Args:
            xs: Array of shape ``(m, n)``
            ys: Array of shape ``(l, n)``

        Returns:
            Array of shape ``(m, l)``
        """

    @abstractmethod
    def describe(self) -> str:
        """The kernel in grammar form."""


@dataclass(frozen=True)
class ExpAlpha(KernelSpec):
    """The exponential kernel ``exp(-|x - x'|^{2 alpha} / 2)``."""

    alpha: float
    dim: int = 1

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise DomainException(f"alpha must lie in (0, 1), got {self.alpha}")

    def matrix(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        distances = cdist(xs, ys)
        return np.exp(-(distances ** (2.0 * self.alpha)) / 2.0)

    def describe(self) -> str:
        return f"exp-alpha:{self.alpha!r}"


@dataclass(frozen=True)
class GaussianSE(KernelSpec):
    """The square-exponential kernel ``exp(-|x - x'|^2 / (2 scale^2))``."""

    scale: float = 1.0
    dim: int = 1

    def __post_init__(self) -> None:
        if not self.scale > 0.0:
            raise DomainException(f"scale must be positive, got {self.scale}")

    def matrix(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        squared = cdist(xs, ys, metric="sqeuclidean")
        return np.exp(-squared / (2.0 * self.scale ** 2))

    def describe(self) -> str:
        return f"gaussian-se:{self.scale!r}"


@dataclass(frozen=True)
class WhiteNoise(KernelSpec):
    """White noise over a base measure, the measure ``(A, B) -> mu(A n B)``."""

    base: BaseMeasure = field(default_factory=Lebesgue)

    @property
    def dim(self) -> int:  # type: ignore[override]
        return self.base.dim

    @property
    def pointwise(self) -> bool:
        return False

    def matrix(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        raise MeasureValuedKernelException(
            "kernel is measure-valued; use pairing operations"
        )

    def describe(self) -> str:
        return f"white-noise:{self.base.name}"


@dataclass(frozen=True)
class GridKernel(KernelSpec):
    """A tabulated kernel with multilinear interpolation.

    The table holds values on the uniform grid of ``table.shape[0]`` nodes per
    axis of the product cube ``[0, 1]^n x [0, 1]^n``; its first n axes belong to
    x and its last n axes to x'.  Evaluation averages the interpolants at
    ``(x, x')`` and ``(x', x)``, which makes it exactly symmetric.
    """

    table: np.ndarray = field(compare=False)
    dim: int = 1
    label: str = "grid"
    _interpolator: RegularGridInterpolator = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        table = np.asarray(self.table, dtype=float)
        nodes = table.shape[0] if table.ndim else 0
        if table.ndim != 2 * self.dim or nodes < 2 or any(
            size != nodes for size in table.shape
        ):
            raise DomainException(
                f"a grid kernel in dimension {self.dim} needs a table with "
                f"{2 * self.dim} equal axes of at least two nodes"
            )
        if not np.all(np.isfinite(table)):
            raise DomainException("grid kernel table has non-finite entries")
        axis = np.linspace(0.0, 1.0, nodes)
        object.__setattr__(
            self,
            "_interpolator",
            RegularGridInterpolator((axis,) * (2 * self.dim), table),
        )

    def matrix(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        pairs_xy = np.concatenate(
            [np.repeat(xs, ys.shape[0], axis=0), np.tile(ys, (xs.shape[0], 1))], axis=1
        )
        pairs_yx = np.concatenate([pairs_xy[:, self.dim :], pairs_xy[:, : self.dim]], 1)
        values = (self._interpolator(pairs_xy) + self._interpolator(pairs_yx)) / 2.0
        return values.reshape(xs.shape[0], ys.shape[0])

    def describe(self) -> str:
        return f"grid:{self.label}"


def eval_kernel(spec: KernelSpec, x: np.ndarray, y: np.ndarray) -> float:
    """Evaluate a kernel at one pair of points.

    Args:
        spec: The kernel
        x: A point of [0, 1]^n
        y: A point of [0, 1]^n

    Returns:
        The kernel value

    Raises:
        MeasureValuedKernelException: For white-noise kernels
    """
    if not spec.pointwise:
        raise MeasureValuedKernelException(
            "kernel is measure-valued; use pairing operations"
        )
    return float(kernel_matrix(spec, x, y)[0, 0])


def kernel_matrix(spec: KernelSpec, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Kernel values for all pairs of two point sets, with domain checks.

    Args:
        spec: The kernel
        xs: Points of shape ``(m, n)`` or a single point
        ys: Points of shape ``(l, n)`` or a single point

    Returns:
        Array of shape ``(m, l)``
    """
    return spec.matrix(check_in_cube(xs, spec.dim), check_in_cube(ys, spec.dim))


def _parse_float(text: str, what: str) -> float:
    try:
        value = float(text)
    except ValueError as error:
        raise ConfigurationException(
            f"{what} must be a number, got {text!r}"
        ) from error
    if not math.isfinite(value):
        raise ConfigurationException(f"{what} must be finite, got {text!r}")
    return value


def _parse_points(text: str, dim: int) -> Tuple[Tuple[float, ...], ...]:
    points = []
    for chunk in text.split(";"):
        coords = tuple(
            _parse_float(part, "atom coordinate") for part in chunk.split(",")
        )
        if len(coords) != dim:
            raise ConfigurationException(
                f"atom {chunk!r} has {len(coords)} coordinates, expected {dim}"
            )
        points.append(coords)
    return tuple(points)


def parse_base(text: str, dim: int = 1) -> BaseMeasure:
    """Parse the name of a base measure.

    Args:
        text: ``lebesgue`` or ``counting:<points>``
        dim: The dimension of the unit cube

    Returns:
        The base measure

    Raises:
        ConfigurationException: If the text names no supported base measure
    """
    kind, _, rest = text.strip().partition(":")
    try:
        if kind == "lebesgue":
            return Lebesgue(dim)
        if kind == "counting" and rest:
            return Counting(_parse_points(rest, dim))
    except DomainException as error:
        raise ConfigurationException(str(error)) from error
    raise ConfigurationException(
        f"unknown base measure {text!r}; use 'lebesgue' or 'counting:<points>'"
    )


def parse_kernel(text: str, dim: int = 1) -> KernelSpec:
    """Parse the kernel grammar.

    Args:
        text: A kernel such as ``exp-alpha:0.5``
        dim: The dimension of the unit cube

    Returns:
        The kernel

    Raises:
        ConfigurationException: If the text is not a valid kernel
    """
    family, _, parameters = text.strip().partition(":")
    try:
        if family == "exp-alpha":
            return ExpAlpha(_parse_float(parameters, "alpha"), dim)
        if family == "gaussian-se":
            scale = _parse_float(parameters, "scale") if parameters else 1.0
            return GaussianSE(scale, dim)
        if family == "white-noise":
            return WhiteNoise(parse_base(parameters, dim))
    except DomainException as error:
        raise ConfigurationException(str(error)) from error
    raise ConfigurationException(
        f"unknown kernel {text!r}; families are exp-alpha, gaussian-se, white-noise"
    )
