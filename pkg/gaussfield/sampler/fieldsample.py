#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Provides the random coefficients of Gaussian field samples.

A sample of the truncated field is ``theta = sum_i sqrt(lambda_i) xi_i phi_i`` with
i.i.d. standard normal ``xi_i``.  The variates of a sample come from their own
stream of a counter-based generator, identified by the run seed and a stream
index, so samples can be regenerated one at a time and drawn on any number of
threads with the same result.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from gaussfield.decomp.biorthogonalization import Decomposition
from gaussfield.decomp.tensorcoefficients import BasisMeta
from gaussfield.utils.exceptions import DomainException, InvalidDecompositionException
from gaussfield.utils.randomness import (
    NORMAL_METHOD,
    RNG_ALGORITHM,
    check_seed,
    standard_normals,
    thread_count,
)

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class FieldSample:
    """The coefficients ``a_i = sqrt(lambda_i) xi_i`` of one field sample."""

    coeffs: np.ndarray
    seed: int
    stream_index: int
    meta: BasisMeta
    rng_algorithm: str = RNG_ALGORITHM
    normal_method: str = NORMAL_METHOD

    def __post_init__(self) -> None:
        coeffs = np.array(self.coeffs, dtype=float).reshape(-1)
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def terms(self) -> int:
        """The number of retained decomposition terms.

        Returns:
            The length of the coefficient vector
        """
        return self.coeffs.shape[0]


@dataclass(frozen=True)
class FieldSampleBatch:
    """Samples of consecutive streams, one coefficient row per sample."""

    coeffs: np.ndarray
    seed: int
    first_stream: int
    meta: BasisMeta
    rng_algorithm: str = RNG_ALGORITHM

    def __len__(self) -> int:
        return self.coeffs.shape[0]

    def __iter__(self) -> Iterator[FieldSample]:
        for row in range(len(self)):
            yield self.sample(row)

    def sample(self, row: int) -> FieldSample:
        """The sample of one row.

        Args:
            row: The row, counted from the first stream

        Returns:
            The sample with its stream index
        """
        return FieldSample(
            self.coeffs[row], self.seed, self.first_stream + row, self.meta
        )


def check_lambdas(d: Decomposition) -> np.ndarray:
    """Validate the weights of a decomposition.

    Args:
        d: The decomposition

    Returns:
        The weights

    Raises:
        InvalidDecompositionException: If a weight is negative or not finite
    """
    lambdas = d.lambdas
    if np.any(lambdas < 0.0) or not np.all(np.isfinite(lambdas)):
        raise InvalidDecompositionException(
            "decomposition has negative or non-finite lambdas"
        )
    return lambdas


def retained_terms(d: Decomposition, energy_cutoff: float = 0.0) -> int:
    """The number of leading terms kept under an energy cutoff.

    Args:
        d: The decomposition
        energy_cutoff: The fraction epsilon of the weight sum that may be dropped

    Returns:
        The smallest m with ``sum_{i<m} lambda_i >= (1 - epsilon) sum lambda``, all
        terms when epsilon is zero

    Raises:
        DomainException: If the cutoff is outside [0, 1)
    """
    if not 0.0 <= energy_cutoff < 1.0:
        raise DomainException(f"energy cutoff must lie in [0, 1), got {energy_cutoff}")
    lambdas = check_lambdas(d)
    if energy_cutoff == 0.0 or d.size == 0:
        return d.size
    partial = np.cumsum(lambdas)
    target = (1.0 - energy_cutoff) * partial[-1]
    return min(int(np.searchsorted(partial, target, side="left")) + 1, d.size)


def draw_sample(
    d: Decomposition, seed: int, stream_index: int, energy_cutoff: float = 0.0
) -> FieldSample:
    """Draw the sample of one stream.

    Args:
        d: The decomposition
        seed: The 64-bit run seed
        stream_index: The stream index
        energy_cutoff: The fraction of the weight sum that may be dropped

    Returns:
        The sample
    """
    terms = retained_terms(d, energy_cutoff)
    xi = standard_normals(seed, stream_index, d.size)[:terms]
    coeffs = np.sqrt(d.lambdas[:terms]) * xi
    return FieldSample(coeffs, check_seed(seed), stream_index, d.meta)


def draw_samples(
    d: Decomposition,
    seed: int,
    n: int,
    first_stream: int = 0,
    energy_cutoff: float = 0.0,
    workers: Optional[int] = None,
) -> FieldSampleBatch:
    """Draw the samples of ``n`` consecutive streams.

    Row s of the batch equals ``draw_sample(d, seed, first_stream + s)``.

    Args:
        d: The decomposition
        seed: The 64-bit run seed
        n: The number of samples
        first_stream: The stream of the first sample
        energy_cutoff: The fraction of the weight sum that may be dropped
        workers: The number of threads, see `thread_count`

    Returns:
        The batch

    Raises:
        DomainException: If n is negative
    """
    if n < 0:
        raise DomainException(f"sample count must be non-negative, got {n}")
    seed = check_seed(seed)
    terms = retained_terms(d, energy_cutoff)
    scale = np.sqrt(d.lambdas[:terms])

    def _row(stream: int) -> np.ndarray:
        return scale * standard_normals(seed, stream, d.size)[:terms]

    streams = range(first_stream, first_stream + n)
    threads = thread_count(workers)
    coeffs = np.zeros((n, terms))
    if threads == 1 or n < 2:
        for row, stream in enumerate(streams):
            coeffs[row] = _row(stream)
    else:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            for row, values in enumerate(executor.map(_row, streams)):
                coeffs[row] = values
    _LOGGER.debug("Drew %d samples of %d terms on %d threads", n, terms, threads)
    return FieldSampleBatch(coeffs, seed, first_stream, d.meta)
