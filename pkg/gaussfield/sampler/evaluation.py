#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Evaluates field samples at points, on dyadic grids and against functionals."""
import logging
from pathlib import Path
from typing import Iterable, Iterator, List, Sequence, Tuple, Union

import numpy as np

from gaussfield.decomp.biorthogonalization import Decomposition
from gaussfield.dyadic.basis import basis_matrix, expand
from gaussfield.dyadic.functionals import CoefficientFunctional
from gaussfield.dyadic.grid import check_in_cube, grid_points
from gaussfield.reporting.export import write_table
from gaussfield.sampler.fieldsample import FieldSample, FieldSampleBatch
from gaussfield.utils.exceptions import DomainException

_LOGGER = logging.getLogger(__name__)

DEFAULT_GRID_CAP = 1 << 22
"""Largest number of grid nodes evaluated at once."""


def field_coefficients(s: FieldSample, d: Decomposition) -> np.ndarray:
    """The coefficients of a sample over the basis functions.

    Args:
        s: The sample
        d: The decomposition it was drawn from

    Returns:
        ``sum_i a_i phi_i`` as a coefficient vector

    Raises:
        DomainException: If the sample has more terms than the decomposition
    """
    if s.terms > d.size:
        raise DomainException(
            f"sample has {s.terms} terms, decomposition only {d.size}"
        )
    return s.coeffs @ d.phis[: s.terms]


def _evaluate(s: FieldSample, d: Decomposition, points: np.ndarray) -> np.ndarray:
    return expand(field_coefficients(s, d), d.meta.indices, d.meta.alpha, points)


def eval_field(s: FieldSample, d: Decomposition, x: np.ndarray) -> float:
    """Evaluate a sample at one point.

    Args:
        s: The sample
        d: The decomposition it was drawn from
        x: A point of [0, 1]^n

    Returns:
        ``sum_i a_i phi_i(x)``
    """
    point = check_in_cube(x, d.meta.dim)
    if point.shape[0] != 1:
        raise DomainException("eval_field takes a single point")
    return float(_evaluate(s, d, point)[0])


def field_on_grid(
    s: FieldSample, d: Decomposition, resolution: int, cap: int = DEFAULT_GRID_CAP
) -> np.ndarray:
    """Evaluate a sample on the uniform dyadic grid.

    Every value equals `eval_field` at its node exactly.

    Args:
        s: The sample
        d: The decomposition it was drawn from
        resolution: The grid has 2^resolution + 1 nodes per axis
        cap: The maximal number of nodes

    Returns:
        The values in row-major node order
    """
    return _evaluate(s, d, grid_points(d.meta.dim, resolution, cap))


def batch_values(
    batch: FieldSampleBatch, d: Decomposition, points: np.ndarray
) -> np.ndarray:
    """Evaluate all samples of a batch at a few points.

    Args:
        batch: The samples
        d: The decomposition they were drawn from
        points: Array of shape ``(m, n)``

    Returns:
        Array of shape ``(len(batch), m)``
    """
    terms = batch.coeffs.shape[1]
    points = check_in_cube(points, d.meta.dim)
    values = d.phis[:terms] @ basis_matrix(d.meta.indices, d.meta.alpha, points)
    return batch.coeffs @ values


def batch_pairings(
    batch: FieldSampleBatch, d: Decomposition, eta: CoefficientFunctional
) -> np.ndarray:
    """Pair all samples of a batch with a functional.

    Args:
        batch: The samples
        d: The decomposition they were drawn from
        eta: A finite combination of Dirac functionals

    Returns:
        One pairing per sample
    """
    if not eta.atoms:
        return np.zeros(len(batch))
    return batch_values(batch, d, eta.points) @ eta.weights


def pair_field(s: FieldSample, d: Decomposition, eta: CoefficientFunctional) -> float:
    """Pair a sample with a finite combination of Dirac functionals.

    Args:
        s: The sample
        d: The decomposition it was drawn from
        eta: The functional

    Returns:
        ``sum_atoms weight * eval_field(point)``
    """
    if not eta.atoms:
        return 0.0
    return float(np.dot(eta.weights, _evaluate(s, d, eta.points)))


def _grid_rows(
    samples: Iterable[FieldSample], d: Decomposition, resolution: int, cap: int
) -> Iterator[List[Union[int, float]]]:
    nodes = grid_points(d.meta.dim, resolution, cap)
    for number, sample in enumerate(samples):
        values = _evaluate(sample, d, nodes)
        for node, value in zip(nodes, values):
            yield [number, *(float(coord) for coord in node), float(value)]


def grid_header(dim: int) -> Tuple[str, ...]:
    """The column names of grid exports.

    Args:
        dim: The dimension

    Returns:
        ``sample``, one coordinate column per axis and ``value``
    """
    return ("sample", *(f"x{axis + 1}" for axis in range(dim)), "value")


def write_grid_csv(
    path: Path,
    samples: Sequence[FieldSample],
    d: Decomposition,
    resolution: int,
    cap: int = DEFAULT_GRID_CAP,
) -> int:
    """Export samples on the uniform dyadic grid.

    Args:
        path: The CSV file
        samples: The samples, numbered from zero in the ``sample`` column
        d: The decomposition they were drawn from
        resolution: The grid resolution
        cap: The maximal number of nodes per sample

    Returns:
        The number of rows written
    """
    return write_table(
        path,
        grid_header(d.meta.dim),
        _grid_rows(samples, d, resolution, cap),
    )
