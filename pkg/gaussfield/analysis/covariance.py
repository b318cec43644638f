#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Monte-Carlo estimates of pairing covariances and their decomposition targets."""
import dataclasses
import logging
import math
from typing import Sequence, Union

import numpy as np
from scipy import stats

from gaussfield.decomp.biorthogonalization import Decomposition
from gaussfield.dyadic.basis import basis_matrix
from gaussfield.dyadic.functionals import CoefficientFunctional
from gaussfield.sampler.evaluation import batch_pairings, pair_field
from gaussfield.sampler.fieldsample import FieldSample, FieldSampleBatch
from gaussfield.utils.exceptions import InsufficientSamplesException

_LOGGER = logging.getLogger(__name__)

Samples = Union[FieldSampleBatch, Sequence[FieldSample]]


@dataclasses.dataclass(frozen=True)
class Estimate:
    """A Monte-Carlo estimate with its standard error."""

    value: float
    standard_error: float
    count: int

    def within(self, target: float, errors: float = 4.0, floor: float = 0.0) -> bool:
        """Check the estimate against a target.

        Args:
            target: The expected value
            errors: Allowed number of standard errors
            floor: Absolute tolerance used when it exceeds the error band

        Returns:
            Whether ``|value - target| <= max(floor, errors * standard_error)``
        """
        band = max(floor, errors * self.standard_error)
        return abs(self.value - target) <= band


def sample_pairings(
    samples: Samples, d: Decomposition, eta: CoefficientFunctional
) -> np.ndarray:
    """Pair every sample with a functional.

    Args:
        samples: A batch or a sequence of samples
        d: The decomposition they were drawn from
        eta: The functional

    Returns:
        One pairing per sample
    """
    if isinstance(samples, FieldSampleBatch):
        return batch_pairings(samples, d, eta)
    return np.array([pair_field(sample, d, eta) for sample in samples])


def mean_estimate(values: np.ndarray) -> Estimate:
    """The sample mean with its standard error.

    Args:
        values: The observations

    Returns:
        The estimate

    Raises:
        InsufficientSamplesException: For fewer than two observations
    """
    values = np.asarray(values, dtype=float).reshape(-1)
    if values.shape[0] < 2:
        raise InsufficientSamplesException(
            f"need at least two samples, got {values.shape[0]}"
        )
    error = float(np.std(values, ddof=1)) / math.sqrt(values.shape[0])
    return Estimate(float(np.mean(values)), error, values.shape[0])


def empirical_covariance(
    samples: Samples,
    d: Decomposition,
    eta1: CoefficientFunctional,
    eta2: CoefficientFunctional,
) -> Estimate:
    """Estimate ``E[<eta1, theta> <eta2, theta>]`` from samples.

    The field is centred, so the cross moment is the covariance.

    Args:
        samples: At least two samples
        d: The decomposition they were drawn from
        eta1: The first functional
        eta2: The second functional

    Returns:
        The mean of the products and its standard error
    """
    first = sample_pairings(samples, d, eta1)
    second = first if eta2 == eta1 else sample_pairings(samples, d, eta2)
    return mean_estimate(first * second)


def functional_coordinates(d: Decomposition, eta: CoefficientFunctional) -> np.ndarray:
    """Pairings of a functional with every phi_i.

    Args:
        d: The decomposition
        eta: The functional

    Returns:
        ``<eta, phi_i>`` for every term
    """
    if not eta.atoms:
        return np.zeros(d.size)
    values = d.phis @ basis_matrix(d.meta.indices, d.meta.alpha, eta.points)
    return values @ eta.weights


def covariance_target(
    d: Decomposition, eta1: CoefficientFunctional, eta2: CoefficientFunctional
) -> float:
    """The truncated covariance ``<eta2, C eta1>`` of the decomposition.

    Args:
        d: The decomposition
        eta1: The first functional
        eta2: The second functional

    Returns:
        ``sum_i lambda_i <eta1, phi_i> <eta2, phi_i>``
    """
    first = functional_coordinates(d, eta1)
    second = functional_coordinates(d, eta2)
    return float(np.sum(d.lambdas * first * second))


@dataclasses.dataclass(frozen=True)
class Moments:
    """Shape statistics of pairings with their large-sample standard errors."""

    skewness: float
    excess_kurtosis: float
    skewness_error: float
    kurtosis_error: float

    def gaussian(self, errors: float = 4.0) -> bool:
        """Whether both statistics are compatible with a normal distribution.

        Args:
            errors: Allowed number of standard errors

        Returns:
            True if skewness and excess kurtosis lie within the band around 0
        """
        return (
            abs(self.skewness) <= errors * self.skewness_error
            and abs(self.excess_kurtosis) <= errors * self.kurtosis_error
        )


def pairing_moments(values: np.ndarray) -> Moments:
    """Skewness and excess kurtosis of pairings.

    Args:
        values: The pairings of many samples

    Returns:
        The statistics with standard errors sqrt(6/N) and sqrt(24/N)

    Raises:
        InsufficientSamplesException: For fewer than eight observations
    """
    values = np.asarray(values, dtype=float).reshape(-1)
    count = values.shape[0]
    if count < 8:
        raise InsufficientSamplesException(f"need at least eight samples, got {count}")
    if np.ptp(values) == 0.0:
        _LOGGER.warning("Degenerate pairings; shape statistics are undefined")
    return Moments(
        skewness=float(stats.skew(values)),
        excess_kurtosis=float(stats.kurtosis(values, fisher=True)),
        skewness_error=math.sqrt(6.0 / count),
        kurtosis_error=math.sqrt(24.0 / count),
    )
