#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Provides samples of Gaussian fields whose values are measures.

A sample is stored by its density against the base measure, expanded in the
plain hat functions of the decomposition.  Over a counting measure the sample is
a finite combination of atoms, whose weights are the density values at the
atoms.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from gaussfield.decomp.biorthogonalization import Decomposition
from gaussfield.decomp.tensorcoefficients import BasisMeta, Space
from gaussfield.dyadic.basis import basis_matrix, expand
from gaussfield.dyadic.functionals import Evaluable, as_point_function
from gaussfield.dyadic.grid import grid_points
from gaussfield.kernels.basemeasure import BaseMeasure, Counting, l2_pairing
from gaussfield.reporting.export import write_table
from gaussfield.sampler.fieldsample import FieldSampleBatch, draw_sample
from gaussfield.utils.exceptions import DomainException, InvalidDecompositionException

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class AtomList:
    """A finite combination of Dirac measures."""

    points: np.ndarray
    weights: np.ndarray


@dataclass(frozen=True)
class MeasureSample:
    """One sample of a measure-valued field."""

    density: np.ndarray
    """Coefficients of the density against the base measure in the hat basis."""

    base: BaseMeasure
    meta: BasisMeta
    seed: int
    stream_index: int
    atoms: Optional[AtomList] = None
    """The atoms of samples over a counting measure."""

    def density_at(self, points: np.ndarray) -> np.ndarray:
        """Evaluate the density.

        Args:
            points: Array of shape ``(m, n)``

        Returns:
            The density values
        """
        return expand(self.density, self.meta.indices, None, points)


def check_measure_decomposition(d: Decomposition, base: BaseMeasure) -> None:
    """Ensure a decomposition describes measures over a base measure.

    Args:
        d: The decomposition
        base: The base measure the samples are taken against

    Raises:
        InvalidDecompositionException: If the decomposition is not measure-valued
        DomainException: If the base measure differs from the decomposition's
    """
    if d.space is not Space.MEASURE:
        raise InvalidDecompositionException("decomposition is not measure-valued")
    if d.base is not None and d.base.name != base.name:
        raise DomainException(
            f"decomposition is over {d.base.name}, not over {base.name}"
        )


def _atoms_of(density: np.ndarray, meta: BasisMeta, base: Counting) -> AtomList:
    points, _ = base.quadrature()
    weights = density @ basis_matrix(meta.indices, None, points)
    return AtomList(points, weights)


def sample_measure_field(
    d: Decomposition, base: BaseMeasure, seed: int, stream: int
) -> MeasureSample:
    """Draw the measure sample of one stream.

    Args:
        d: A measure-valued decomposition
        base: Its base measure
        seed: The 64-bit run seed
        stream: The stream index

    Returns:
        The sample
    """
    check_measure_decomposition(d, base)
    sample = draw_sample(d, seed, stream)
    density = sample.coeffs @ d.phis[: sample.terms]
    atoms = _atoms_of(density, d.meta, base) if isinstance(base, Counting) else None
    return MeasureSample(density, base, d.meta, sample.seed, stream, atoms)


def pair_measure(m: MeasureSample, test: Evaluable) -> float:
    """Pair a measure sample with a continuous function.

    Args:
        m: The sample
        test: A function on the unit cube

    Returns:
        The integral of the test function against the sample
    """
    if m.atoms is not None:
        if m.atoms.points.shape[0] == 0:
            return 0.0
        values = np.asarray(as_point_function(test)(m.atoms.points), dtype=float)
        return float(np.dot(m.atoms.weights, values.reshape(-1)))
    return l2_pairing(m.base, test, m.density_at, m.meta.k_max)


def functional_coordinates(
    d: Decomposition, base: BaseMeasure, test: Evaluable
) -> np.ndarray:
    """Pairings of a test function with the measures phi_i.

    Args:
        d: A measure-valued decomposition
        base: Its base measure
        test: A function on the unit cube

    Returns:
        ``<test, phi_i>`` for every term
    """
    nodes, weights = base.quadrature(d.meta.k_max)
    values = np.asarray(as_point_function(test)(nodes), dtype=float).reshape(-1)
    hats = basis_matrix(d.meta.indices, None, nodes)
    return d.phis @ (hats @ (weights * values))


def batch_measure_pairings(
    batch: FieldSampleBatch, d: Decomposition, base: BaseMeasure, test: Evaluable
) -> np.ndarray:
    """Pair every sample of a batch with a test function.

    Args:
        batch: Samples drawn from a measure-valued decomposition
        d: The decomposition
        base: Its base measure
        test: A function on the unit cube

    Returns:
        One pairing per sample
    """
    check_measure_decomposition(d, base)
    terms = batch.coeffs.shape[1]
    return batch.coeffs @ functional_coordinates(d, base, test)[:terms]


def covariance_target(
    d: Decomposition, test1: Evaluable, test2: Evaluable, base: BaseMeasure
) -> float:
    """The covariance of two pairings under the truncated field.

    Args:
        d: A measure-valued decomposition
        test1: The first test function
        test2: The second test function
        base: The base measure

    Returns:
        ``sum_i lambda_i <test1, phi_i> <test2, phi_i>``
    """
    check_measure_decomposition(d, base)
    first = functional_coordinates(d, base, test1)
    second = functional_coordinates(d, base, test2)
    return float(np.sum(d.lambdas * first * second))


def explained_variance(
    d: Decomposition, test: Evaluable, base: BaseMeasure, target: float
) -> float:
    """The share of a pairing variance captured by the truncation.

    Args:
        d: A measure-valued decomposition
        test: The test function
        base: The base measure
        target: The variance of the untruncated field

    Returns:
        The truncated variance divided by the target

    Raises:
        DomainException: If the target is not positive
    """
    if not target > 0.0:
        raise DomainException(f"target variance must be positive, got {target}")
    return covariance_target(d, test, test, base) / target


def _density_rows(
    samples: Sequence[MeasureSample], resolution: int
) -> Iterator[List[Union[int, float]]]:
    for number, sample in enumerate(samples):
        if sample.atoms is not None:
            nodes, values = sample.atoms.points, sample.atoms.weights
        else:
            nodes = grid_points(sample.meta.dim, resolution)
            values = sample.density_at(nodes)
        for node, value in zip(nodes, values):
            yield [number, *(float(coord) for coord in node), float(value)]


def density_header(dim: int, atomic: bool = False) -> Tuple[str, ...]:
    """The column names of measure exports.

    Args:
        dim: The dimension
        atomic: Whether the rows are atoms

    Returns:
        ``sample``, the coordinates and ``weight`` or ``density``
    """
    value = "weight" if atomic else "density"
    return ("sample", *(f"x{axis + 1}" for axis in range(dim)), value)


def write_density_csv(
    path: Path, samples: Sequence[MeasureSample], resolution: int
) -> int:
    """Export measure samples as density tables on the dyadic grid.

    The base measure is named in a comment line before the header.  Samples over
    a counting measure are written as one row per atom.

    Args:
        path: The CSV file
        samples: The samples, numbered from zero
        resolution: The grid resolution of density tables

    Returns:
        The number of rows written

    Raises:
        DomainException: If no sample is given
    """
    if not samples:
        raise DomainException("no measure samples to export")
    first = samples[0]
    comments = [f"base={first.base.name}", f"kernel={first.meta.family}"]
    return write_table(
        path,
        density_header(first.meta.dim, first.atoms is not None),
        _density_rows(samples, resolution),
        comments=comments,
    )
