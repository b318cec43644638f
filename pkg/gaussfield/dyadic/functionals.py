#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Provides the coefficient functionals dual to the Faber-Schauder system.

The functional of a level-0 index is a point evaluation.  For level k >= 1 it is
the renormalised second difference

    2^{alpha k - n} sum_eps (delta_tau - delta_{tau^eps}),

where tau^eps moves the coordinates of level exactly k by eps_i 2^{-k}.  Applied
to a function f it gives f(tau) minus the multilinear interpolant of f on the
surrounding level-(k-1) cell, hence biorthogonality to the hat functions.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import (
    Callable,
    DefaultDict,
    Dict,
    Iterable,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import numpy as np
import scipy.sparse as sp

from gaussfield.dyadic.basis import BasisFunction, check_alpha, eval_basis
from gaussfield.dyadic.dyadicindex import DyadicIndex
from gaussfield.dyadic.grid import node_numbers


class Atom(NamedTuple):
    """A weighted point mass."""

    point: Tuple[float, ...]
    weight: float


@dataclass(frozen=True)
class CoefficientFunctional:
    """A finite signed combination of point masses."""

    atoms: Tuple[Atom, ...]

    @classmethod
    def from_atoms(
        cls, atoms: Iterable[Tuple[Sequence[float], float]]
    ) -> CoefficientFunctional:
        """Build a functional, merging equal points and dropping zero weights.

        Args:
            atoms: ``(point, weight)`` pairs

        Returns:
            The normalised functional with atoms sorted by point
        """
        merged: DefaultDict[Tuple[float, ...], float] = defaultdict(float)
        for point, weight in atoms:
            merged[tuple(float(coord) for coord in np.atleast_1d(point))] += float(
                weight
            )
        return cls(
            tuple(
                Atom(point, weight)
                for point, weight in sorted(merged.items())
                if weight != 0.0
            )
        )

    @classmethod
    def dirac(cls, point: Sequence[float]) -> CoefficientFunctional:
        """The point evaluation at a point.

        Args:
            point: The point

        Returns:
            The functional delta_point
        """
        return cls.from_atoms([(point, 1.0)])

    @property
    def points(self) -> np.ndarray:
        """The atom points.

        Returns:
            Array of shape ``(len(atoms), n)``
        """
        return np.array([atom.point for atom in self.atoms], dtype=float)

    @property
    def weights(self) -> np.ndarray:
        """The atom weights.

        Returns:
            A vector of weights
        """
        return np.array([atom.weight for atom in self.atoms], dtype=float)

    @property
    def total_weight(self) -> float:
        """Sum of all weights.

        Returns:
            The total weight, zero for second differences
        """
        return float(np.sum(self.weights))

    def __add__(self, other: CoefficientFunctional) -> CoefficientFunctional:
        return CoefficientFunctional.from_atoms(
            [(atom.point, atom.weight) for atom in self.atoms + other.atoms]
        )

    def __mul__(self, factor: float) -> CoefficientFunctional:
        return CoefficientFunctional.from_atoms(
            [(atom.point, factor * atom.weight) for atom in self.atoms]
        )

    __rmul__ = __mul__


def _raw_atoms(index: DyadicIndex) -> Dict[Tuple[int, ...], float]:
    """Unscaled atoms as numerators over 2^level, merged."""
    if index.level == 0:
        return {index.numerators: 1.0}
    weights: DefaultDict[Tuple[int, ...], float] = defaultdict(float)
    share = 2.0 ** -index.dim
    finest = index.finest_axes
    weights[index.numerators] += 1.0
    for signs in itertools.product((-1, 1), repeat=index.dim):
        neighbour = tuple(
            num + sign if fine else num
            for num, sign, fine in zip(index.numerators, signs, finest)
        )
        weights[neighbour] -= share
    return weights


def coeff_functional(
    idx: DyadicIndex, alpha: Optional[float] = None
) -> CoefficientFunctional:
    """The renormalised coefficient functional of an index.

    Args:
        idx: The dyadic index
        alpha: The renormalisation exponent, None for the plain system

    Returns:
        The Dirac combination dual to the basis function of ``idx``
    """
    alpha = check_alpha(alpha)
    factor = 1.0 if alpha is None else 2.0 ** (alpha * idx.level)
    denominator = float(1 << idx.level)
    return CoefficientFunctional.from_atoms(
        (np.array(nums, dtype=float) / denominator, factor * weight)
        for nums, weight in _raw_atoms(idx).items()
    )


Evaluable = Union[Callable[[np.ndarray], np.ndarray], BasisFunction]


def as_point_function(f: Evaluable) -> Callable[[np.ndarray], np.ndarray]:
    """Turn a basis function or a vectorised callable into a point function.

    Args:
        f: A basis function or a callable on ``(m, n)`` arrays

    Returns:
        A callable returning one value per point
    """
    if isinstance(f, BasisFunction):
        return lambda points: np.asarray(eval_basis(f, points), dtype=float)
    return f


def apply_functional(phi: CoefficientFunctional, f: Evaluable) -> float:
    """Pair a functional with a function.

    Args:
        phi: The functional
        f: A basis function or a callable on ``(m, n)`` arrays

    Returns:
        ``sum weight * f(point)`` over the atoms
    """
    if not phi.atoms:
        return 0.0
    values = np.asarray(as_point_function(f)(phi.points), dtype=float).reshape(-1)
    return float(np.dot(phi.weights, values))


def functional_matrix(
    indices: Sequence[DyadicIndex], alpha: Optional[float], resolution: int
) -> sp.csr_matrix:
    """Atom weights of many functionals over the nodes of a dyadic grid.

    Row p holds the weights of the functional of ``indices[p]`` at the row-major
    grid nodes, so applying all functionals to grid values is a sparse product.

    Args:
        indices: Indices of level at most ``resolution``
        alpha: The renormalisation exponent, None for the plain system
        resolution: The grid resolution

    Returns:
        A sparse matrix of shape ``(len(indices), (2^resolution + 1)^n)``
    """
    alpha = check_alpha(alpha)
    dim = indices[0].dim if indices else 1
    rows: List[int] = []
    cols: List[np.ndarray] = []
    data: List[float] = []
    for row, index in enumerate(indices):
        factor = 1.0 if alpha is None else 2.0 ** (alpha * index.level)
        atoms = _raw_atoms(index)
        points = np.array(list(atoms.keys()), dtype=float) / float(1 << index.level)
        cols.append(node_numbers(points, resolution))
        rows.extend([row] * len(atoms))
        data.extend(factor * weight for weight in atoms.values())
    columns = np.concatenate(cols) if cols else np.zeros(0, dtype=np.int64)
    side = (1 << resolution) + 1
    return sp.csr_matrix(
        (np.array(data), (np.array(rows, dtype=np.int64), columns)),
        shape=(len(indices), side ** dim),
    )


def interpolate(
    f: Callable[[np.ndarray], np.ndarray],
    indices: Sequence[DyadicIndex],
    alpha: Optional[float],
    resolution: int,
    grid: np.ndarray,
) -> np.ndarray:
    """Hierarchical coefficients of a function.

    Args:
        f: A callable on ``(m, n)`` arrays
        indices: The indices, of level at most ``resolution``
        alpha: The renormalisation exponent, None for the plain system
        resolution: The grid resolution carrying all atoms
        grid: The row-major nodes of that grid

    Returns:
        The vector of ``<mu_tau, f>`` in index order
    """
    values = np.asarray(f(grid), dtype=float).reshape(-1)
    return functional_matrix(indices, alpha, resolution) @ values
