#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Provides the weak-* norm of fields through a weighted sum of pairings.

The countable dense system of the predual is replaced by the coefficient
functionals up to a maximal level, each scaled to unit total atom weight, with
weights ``beta_i = 2^-i`` normalised to sum to one.
"""
from __future__ import annotations

import dataclasses
import logging
from typing import Tuple

import numpy as np
from scipy import stats

from gaussfield.decomp.biorthogonalization import Decomposition
from gaussfield.decomp.tensorcoefficients import cached_indices
from gaussfield.dyadic.functionals import CoefficientFunctional, coeff_functional
from gaussfield.sampler.evaluation import batch_values
from gaussfield.sampler.fieldsample import FieldSampleBatch
from gaussfield.utils.exceptions import DomainException

_LOGGER = logging.getLogger(__name__)

MAX_FUNCTIONALS = 1000
"""Longest default system; later weights 2^-i underflow binary64."""


@dataclasses.dataclass(frozen=True)
class WeakStarNorm:
    """Functionals with positive weights summing to one."""

    functionals: Tuple[CoefficientFunctional, ...]
    betas: np.ndarray

    def __post_init__(self) -> None:
        betas = np.array(self.betas, dtype=float).reshape(-1)
        if betas.shape[0] != len(self.functionals):
            raise DomainException(
                f"{betas.shape[0]} weights for {len(self.functionals)} functionals"
            )
        if betas.size == 0 or np.any(betas <= 0.0):
            raise DomainException("weak-* weights must be positive")
        if abs(float(np.sum(betas)) - 1.0) > 1e-12:
            raise DomainException(f"weak-* weights sum to {np.sum(betas)}, not 1")
        betas.setflags(write=False)
        object.__setattr__(self, "functionals", tuple(self.functionals))
        object.__setattr__(self, "betas", betas)

    def __len__(self) -> int:
        return len(self.functionals)


def geometric_weights(count: int) -> np.ndarray:
    """Weights ``2^-i``, i = 1..count, normalised to sum to one.

    Args:
        count: The number of weights

    Returns:
        The weights
    """
    raw = np.exp2(-np.arange(1, count + 1, dtype=float))
    return raw / np.sum(raw)


def default_weak_star_norm(dim: int, k_max: int) -> WeakStarNorm:
    """The weak-* norm over the coefficient functionals up to a level.

    Only the first `MAX_FUNCTIONALS` functionals in enumeration order are used.

    Args:
        dim: The dimension
        k_max: The maximal level of the functionals

    Returns:
        The norm with unit-weight functionals in enumeration order
    """
    functionals = []
    for index in cached_indices(dim, k_max)[:MAX_FUNCTIONALS]:
        functional = coeff_functional(index)
        mass = float(np.sum(np.abs(functional.weights)))
        functionals.append(functional * (1.0 / mass))
    return WeakStarNorm(tuple(functionals), geometric_weights(len(functionals)))


def weak_star_norm(w: WeakStarNorm, pairings: np.ndarray) -> np.ndarray:
    """Evaluate ``sum_i beta_i |<eta_i, u>|``.

    Args:
        w: The norm
        pairings: One pairing per functional, or one row of pairings per field

    Returns:
        The norm, one value per row for a matrix

    Raises:
        DomainException: If the pairings do not align with the functionals
    """
    values = np.asarray(pairings, dtype=float)
    if values.shape[-1] != len(w):
        raise DomainException(
            f"expected {len(w)} pairings per field, got {values.shape[-1]}"
        )
    return np.abs(values) @ w.betas


def weak_star_distance(
    w: WeakStarNorm, pairings_u: np.ndarray, pairings_v: np.ndarray
) -> np.ndarray:
    """The weak-* distance of two fields given their pairings.

    Args:
        w: The norm
        pairings_u: Pairings of the first field
        pairings_v: Pairings of the second field

    Returns:
        ``sum_i beta_i |<eta_i, u - v>|``
    """
    first = np.asarray(pairings_u, dtype=float)
    return weak_star_norm(w, first - np.asarray(pairings_v, dtype=float))


def batch_weak_star_pairings(
    w: WeakStarNorm, batch: FieldSampleBatch, d: Decomposition
) -> np.ndarray:
    """Pair every sample of a batch with every functional of a norm.

    Args:
        w: The norm
        batch: The samples
        d: The decomposition they were drawn from

    Returns:
        Array of shape ``(len(batch), len(w))``
    """
    points = np.concatenate([functional.points for functional in w.functionals])
    values = batch_values(batch, d, points)
    pairings = np.zeros((len(batch), len(w)))
    start = 0
    for column, functional in enumerate(w.functionals):
        stop = start + len(functional.atoms)
        pairings[:, column] = values[:, start:stop] @ functional.weights
        start = stop
    return pairings


def distribution_distance(first: np.ndarray, second: np.ndarray) -> float:
    """The two-sample Kolmogorov-Smirnov distance.

    Args:
        first: The first sample of values
        second: The second sample of values

    Returns:
        The largest distance of the empirical distribution functions
    """
    return float(stats.ks_2samp(first, second).statistic)
