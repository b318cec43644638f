#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Checks the two-sided bound on difference quotients of exponential kernels.

For points x, x', y with ``a = d^alpha(x, y)`` and ``b = d^alpha(x', y)`` the
quotient ``|e^{-a^2} - e^{-b^2}| / d^alpha(x, x')`` lies between
``(a + b) e^{-max(a, b)^2} |a - b| / d^alpha(x, x')`` and
``(a + b) e^{-min(a, b)^2}``.  The factor ``|a - b| / d^alpha(x, x')`` equals one
when x' lies on a geodesic of ``d^alpha`` from x to y; triples below the bound
without that factor are counted separately.
"""
import dataclasses
import logging
from typing import Iterable, Sequence, Tuple

import numpy as np

from gaussfield.utils.exceptions import DomainException
from gaussfield.utils.randomness import uniform_points

_LOGGER = logging.getLogger(__name__)

VIOLATION_TOLERANCE = 1e-12

Triple = Tuple[Sequence[float], Sequence[float], Sequence[float]]


@dataclasses.dataclass(frozen=True)
class SandwichReport:
    """The outcome of a bound check over many triples."""

    checked: int
    skipped: int
    """Triples with x = x'."""

    max_lower_violation: float
    """Largest amount by which a quotient falls below its lower bound."""

    max_upper_violation: float
    """Largest amount by which a quotient exceeds its upper bound."""

    lower_violations: int
    upper_violations: int
    geodesic_bound_failures: int
    """Triples below the lower bound without the geodesic factor."""

    @property
    def passed(self) -> bool:
        """Whether no bound was violated beyond the tolerance.

        Returns:
            True without violations
        """
        return self.lower_violations == 0 and self.upper_violations == 0


def sandwich_terms(
    alpha: float, x: np.ndarray, x_prime: np.ndarray, y: np.ndarray
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Quotients and bounds for arrays of triples.

    Args:
        alpha: The exponent in (0, 1]
        x: Points of shape ``(m, n)``
        x_prime: Points of shape ``(m, n)``
        y: Points of shape ``(m, n)``

    Returns:
        The quotients, lower bounds, upper bounds and lower bounds without the
        geodesic factor
    """
    a = np.linalg.norm(x - y, axis=1) ** alpha
    b = np.linalg.norm(x_prime - y, axis=1) ** alpha
    gap = np.linalg.norm(x - x_prime, axis=1) ** alpha
    quotient = np.abs(np.exp(-(a ** 2)) - np.exp(-(b ** 2))) / gap
    total = a + b
    geodesic = total * np.exp(-(np.maximum(a, b) ** 2))
    lower = geodesic * np.abs(a - b) / gap
    upper = total * np.exp(-(np.minimum(a, b) ** 2))
    return quotient, lower, upper, geodesic


def sandwich_check(alpha: float, triples: Iterable[Triple]) -> SandwichReport:
    """Check the bound on a list of triples ``(x, x', y)``.

    Args:
        alpha: The exponent in (0, 1]
        triples: The triples; triples with x = x' are skipped

    Returns:
        The report

    Raises:
        DomainException: If alpha is out of range or a point leaves the cube
    """
    if not 0.0 < alpha <= 1.0:
        raise DomainException(f"alpha must lie in (0, 1], got {alpha}")
    rows = [
        np.concatenate([np.atleast_1d(part) for part in triple]) for triple in triples
    ]
    array = np.array(rows, dtype=float)
    return _check_array(alpha, array)


def _check_array(alpha: float, array: np.ndarray) -> SandwichReport:
    if array.size == 0:
        return SandwichReport(0, 0, 0.0, 0.0, 0, 0, 0)
    if array.shape[1] % 3:
        raise DomainException("triples need three points of one dimension")
    if np.any(array < 0.0) or np.any(array > 1.0):
        raise DomainException("points must lie in the closed unit cube")
    dim = array.shape[1] // 3
    x, x_prime, y = array[:, :dim], array[:, dim : 2 * dim], array[:, 2 * dim :]
    distinct = np.any(x != x_prime, axis=1)
    skipped = int(np.sum(~distinct))
    quotient, lower, upper, geodesic = sandwich_terms(
        alpha, x[distinct], x_prime[distinct], y[distinct]
    )
    below = lower - quotient
    above = quotient - upper
    report = SandwichReport(
        checked=int(quotient.shape[0]),
        skipped=skipped,
        max_lower_violation=float(np.max(below, initial=0.0)),
        max_upper_violation=float(np.max(above, initial=0.0)),
        lower_violations=int(np.sum(below > VIOLATION_TOLERANCE)),
        upper_violations=int(np.sum(above > VIOLATION_TOLERANCE)),
        geodesic_bound_failures=int(
            np.sum(geodesic - quotient > VIOLATION_TOLERANCE)
        ),
    )
    if skipped:
        _LOGGER.info("Skipped %d triples with coincident points", skipped)
    return report


def random_triples(seed: int, stream: int, count: int, dim: int = 1) -> np.ndarray:
    """Draw triples uniformly from the unit cube.

    Args:
        seed: The 64-bit run seed
        stream: The stream index
        count: The number of triples
        dim: The dimension

    Returns:
        Array of shape ``(count, 3 dim)`` holding x, x' and y per row
    """
    return uniform_points(seed, stream, count, 3 * dim)


def random_sandwich_check(
    alpha: float, seed: int, count: int, dim: int = 1, stream: int = 0
) -> SandwichReport:
    """Check the bound on uniformly drawn triples.

    Args:
        alpha: The exponent in (0, 1]
        seed: The 64-bit run seed
        count: The number of triples
        dim: The dimension
        stream: The stream index

    Returns:
        The report
    """
    if not 0.0 < alpha <= 1.0:
        raise DomainException(f"alpha must lie in (0, 1], got {alpha}")
    return _check_array(alpha, random_triples(seed, stream, count, dim))
