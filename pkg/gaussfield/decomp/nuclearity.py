#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Tracks the summability of the decomposition weights across truncation levels."""
import dataclasses
import logging
from typing import List, Optional, Sequence

import numpy as np

from gaussfield.decomp.biorthogonalization import biorthogonalize
from gaussfield.decomp.norms import NormMode
from gaussfield.decomp.tensorcoefficients import DEFAULT_CAP, tensor_coefficients
from gaussfield.kernels.kernelspec import KernelSpec

_LOGGER = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class NuclearityEntry:
    """Weight sums of the decomposition at one maximal level."""

    k_max: int
    terms: int
    lambda_sum: float
    """The trace-class sum of the weights."""

    sqrt_lambda_sum: float
    """The sum of square roots, finite for 1/2-nuclear covariances."""


def nuclearity_profile(
    spec: KernelSpec,
    dim: int,
    k_values: Sequence[int],
    alpha: Optional[float] = 0.5,
    norm_mode: Optional[NormMode] = None,
    cap: int = DEFAULT_CAP,
) -> List[NuclearityEntry]:
    """Decompose a kernel at several maximal levels and sum the weights.

    Args:
        spec: The kernel
        dim: The dimension
        k_values: The maximal levels, in the order to report them
        alpha: The renormalisation exponent
        norm_mode: The normalisation of the directions
        cap: The maximal number of basis functions

    Returns:
        One entry per maximal level
    """
    profile = []
    for k_max in k_values:
        decomposition = biorthogonalize(
            tensor_coefficients(spec, dim, k_max, alpha, cap), norm_mode=norm_mode
        )
        lambdas = decomposition.lambdas
        entry = NuclearityEntry(
            k_max=k_max,
            terms=decomposition.size,
            lambda_sum=float(np.sum(lambdas)),
            sqrt_lambda_sum=float(np.sum(np.sqrt(lambdas))),
        )
        _LOGGER.info(
            "k_max=%d: sum lambda=%.6g, sum sqrt(lambda)=%.6g",
            k_max,
            entry.lambda_sum,
            entry.sqrt_lambda_sum,
        )
        profile.append(entry)
    return profile
