#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Provides the diagonal nuclear decomposition of a covariance operator.

The coefficient matrix C of the covariance is diagonalised by a congruence with a
diagonally pivoted Cholesky factorisation: at each step the index with the
largest remaining diagonal entry is chosen, its column ``l = R[:, p] / sqrt(R[p, p])``
is recorded and ``l l^T`` is removed from the remainder R.  The columns u of the
inverse of the factor on the pivot rows satisfy ``u_i^T C u_j = delta_ij`` and
``C u_i = l_i``; they are the Gram-Schmidt biorthogonalised predual elements.

Each raw direction is then normalised in the chosen norm, which fixes

    phi_i = w_i / |w_i|,   lambda_i = |w_i|^2,   eta_i = u_i |w_i|,

so that ``<eta_i, C eta_j> = lambda_i delta_ij`` and ``<eta_i, phi_j> = delta_ij``.
For the Hölder space the raw direction w_i is l_i itself; for measures it is the
density of the image measure of u_i.
"""
import dataclasses
import logging
import math
from typing import Dict, Optional

import numpy as np
from scipy.linalg import solve_triangular

from gaussfield.decomp.norms import (
    NormMode,
    euclidean_norms,
    grid_hoelder_norms,
    total_variation_norms,
)
from gaussfield.decomp.tensorcoefficients import BasisMeta, Space, TensorCoefficients
from gaussfield.kernels.basemeasure import BaseMeasure
from gaussfield.utils.exceptions import (
    DomainException,
    InvalidDecompositionException,
    NotPositiveSemidefiniteException,
)

_LOGGER = logging.getLogger(__name__)

RELATIVE_PIVOT_TOL = 1e-12
"""Default pivot tolerance relative to the largest initial diagonal entry."""


@dataclasses.dataclass(frozen=True)
class VerificationReport:
    """Diagnostics of a decomposition against its coefficient matrix."""

    max_off_diagonal: float
    """Largest |<eta_i, C eta_j>| over i != j."""

    min_lambda: float
    max_lambda: float

    reconstruction_residual: float
    """Largest column norm of ``sum_i lambda_i q_i q_i^T - C``."""

    min_remaining_diagonal: float
    """Smallest diagonal entry left when pivoting stopped, before clamping."""

    def to_dict(self) -> Dict[str, float]:
        """Convert the report to a plain mapping.

        Returns:
            Field names mapped to values
        """
        return {
            key: float(value) for key, value in dataclasses.asdict(self).items()
        }


@dataclasses.dataclass(frozen=True)
class Decomposition:
    """A diagonalised covariance operator with its biorthogonal system."""

    meta: BasisMeta
    lambdas: np.ndarray
    """Nonincreasing weights lambda_i."""

    phis: np.ndarray
    """Row i holds the coefficients of phi_i over the basis functions."""

    etas: np.ndarray
    """Row i holds the coordinates of eta_i over the predual system."""

    norm_mode: NormMode = NormMode.COEFFICIENT_EUCLIDEAN
    pivot_tol: float = 0.0
    space: Space = Space.HOELDER
    base: Optional[BaseMeasure] = None
    pivots: np.ndarray = dataclasses.field(default_factory=lambda: np.zeros(0))
    """Pivot values in selection order."""

    pivot_indices: np.ndarray = dataclasses.field(
        default_factory=lambda: np.zeros(0, dtype=np.int64)
    )
    report: Optional[VerificationReport] = None

    def __post_init__(self) -> None:
        lambdas = np.asarray(self.lambdas, dtype=float).reshape(-1)
        size = lambdas.shape[0]
        width = -1 if size else self.meta.size
        phis = np.asarray(self.phis, dtype=float).reshape(size, width)
        etas = np.asarray(self.etas, dtype=float).reshape(size, width)
        if size and (
            phis.shape[1] != self.meta.size or etas.shape[1] != self.meta.size
        ):
            raise InvalidDecompositionException(
                f"directions must have {self.meta.size} coefficients"
            )
        for name, value in (("lambdas", lambdas), ("phis", phis), ("etas", etas)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @property
    def size(self) -> int:
        """The number of terms.

        Returns:
            The length of ``lambdas``
        """
        return self.lambdas.shape[0]

    def pairing_coordinates(self, tc: TensorCoefficients) -> np.ndarray:
        """Pairings of the predual system with each phi_i.

        Args:
            tc: The coefficient matrix the decomposition was built from

        Returns:
            Array of shape ``(M, r)`` with column i equal to ``C eta_i / lambda_i``
        """
        safe = np.where(self.lambdas > 0.0, self.lambdas, 1.0)
        return (tc.matrix @ self.etas.T) / safe[None, :]

    def with_report(self, report: VerificationReport) -> "Decomposition":
        """Attach a verification report.

        Args:
            report: The report

        Returns:
            A copy carrying the report
        """
        return dataclasses.replace(self, report=report)


def _pivoted_cholesky(matrix: np.ndarray, tol: float):
    remainder = np.array(matrix, dtype=float)
    size = remainder.shape[0]
    active = np.ones(size, dtype=bool)
    columns = []
    pivots = []
    chosen = []
    for _ in range(size):
        diagonal = np.where(active, np.diag(remainder), -np.inf)
        pivot = int(np.argmax(diagonal))
        value = diagonal[pivot]
        if not value > tol:
            break
        column = remainder[:, pivot] / math.sqrt(value)
        column[~active] = 0.0
        remainder -= np.outer(column, column)
        remainder[pivot, :] = 0.0
        remainder[:, pivot] = 0.0
        active[pivot] = False
        columns.append(column)
        pivots.append(value)
        chosen.append(pivot)
    left = np.diag(remainder)[active]
    lowest = float(left.min()) if left.size else 0.0
    factor = np.column_stack(columns) if columns else np.zeros((size, 0))
    return factor, np.array(pivots), np.array(chosen, dtype=np.int64), lowest


def _direction_norms(
    tc: TensorCoefficients, directions: np.ndarray, norm_mode: NormMode
) -> np.ndarray:
    if norm_mode is NormMode.COEFFICIENT_EUCLIDEAN:
        return euclidean_norms(directions)
    if norm_mode is NormMode.GRID_HOELDER:
        if tc.space is not Space.HOELDER or tc.meta.alpha is None:
            raise DomainException(
                "grid-hoelder norms need a renormalised Hölder basis"
            )
        return grid_hoelder_norms(
            directions, tc.meta.indices, tc.meta.alpha, tc.meta.k_max
        )
    if tc.space is not Space.MEASURE or tc.base is None:
        raise DomainException("total-variation norms need a measure-valued covariance")
    return total_variation_norms(directions, tc.meta.indices, tc.base, tc.meta.k_max)


def biorthogonalize(
    tc: TensorCoefficients,
    pivot_tol: Optional[float] = None,
    norm_mode: Optional[NormMode] = None,
) -> Decomposition:
    """Diagonalise a covariance by pivoted biorthogonalisation.

    Args:
        tc: The coefficient matrix
        pivot_tol: Stop when the largest remaining diagonal entry is at most this;
            defaults to 1e-12 times the largest initial diagonal entry
        norm_mode: The normalisation of the directions; defaults to grid-hoelder
            for Hölder fields and total-variation for measures

    Returns:
        The decomposition, sorted by nonincreasing lambda, with its report

    Raises:
        DomainException: If pivot_tol is not positive
        NotPositiveSemidefiniteException: If a remaining diagonal entry is below
            ``-pivot_tol``
    """
    if norm_mode is None:
        measure = tc.space is Space.MEASURE
        norm_mode = NormMode.TOTAL_VARIATION if measure else NormMode.GRID_HOELDER
    norm_mode = NormMode(norm_mode)
    largest = float(np.max(np.diag(tc.matrix), initial=0.0))
    if pivot_tol is None:
        pivot_tol = RELATIVE_PIVOT_TOL * largest if largest > 0.0 else math.ulp(1.0)
    if not pivot_tol > 0.0:
        raise DomainException(f"pivot_tol must be positive, got {pivot_tol}")

    factor, pivots, chosen, lowest = _pivoted_cholesky(tc.matrix, pivot_tol)
    if lowest < -pivot_tol:
        raise NotPositiveSemidefiniteException(
            "kernel not positive semidefinite at this truncation "
            f"(remaining diagonal {lowest:.3e})"
        )
    if lowest < 0.0:
        _LOGGER.warning("Clamped remaining diagonal %.3e to zero", lowest)
    rank = factor.shape[1]
    _LOGGER.info("Pivoted %d of %d directions", rank, tc.size)

    inverse = np.zeros((tc.size, rank))
    if rank:
        inverse[chosen, :] = solve_triangular(
            factor[chosen, :].T, np.eye(rank), lower=False
        )
    if tc.space is Space.MEASURE:
        raw = inverse.T if tc.density_map is None else (tc.density_map @ inverse).T
    else:
        raw = factor.T
    norms = _direction_norms(tc, raw, norm_mode) if rank else np.zeros(0)
    if np.any(norms <= 0.0):
        raise InvalidDecompositionException("a pivoted direction has zero norm")

    order = np.argsort(-(norms ** 2), kind="stable")
    norms = norms[order]
    decomposition = Decomposition(
        meta=tc.meta,
        lambdas=norms ** 2,
        phis=raw[order] / norms[:, None],
        etas=inverse.T[order] * norms[:, None],
        norm_mode=norm_mode,
        pivot_tol=float(pivot_tol),
        space=tc.space,
        base=tc.base,
        pivots=pivots,
        pivot_indices=chosen,
    )
    return decomposition.with_report(verify_biorthogonality(decomposition, tc, lowest))


def verify_biorthogonality(
    d: Decomposition, tc: TensorCoefficients, min_remaining_diagonal: float = 0.0
) -> VerificationReport:
    """Check a decomposition against its coefficient matrix.

    Args:
        d: The decomposition
        tc: The coefficient matrix it was built from
        min_remaining_diagonal: The smallest diagonal entry left by pivoting

    Returns:
        The verification report
    """
    if d.size == 0:
        residual = float(np.linalg.norm(tc.matrix, axis=0).max(initial=0.0))
        return VerificationReport(0.0, 0.0, 0.0, residual, min_remaining_diagonal)
    pairings = d.etas @ tc.matrix @ d.etas.T
    off_diagonal = pairings - np.diag(np.diag(pairings))
    coordinates = d.pairing_coordinates(tc)
    reconstruction = (coordinates * d.lambdas[None, :]) @ coordinates.T
    residual = np.linalg.norm(reconstruction - tc.matrix, axis=0).max()
    return VerificationReport(
        max_off_diagonal=float(np.abs(off_diagonal).max()),
        min_lambda=float(d.lambdas.min()),
        max_lambda=float(d.lambdas.max()),
        reconstruction_residual=float(residual),
        min_remaining_diagonal=float(min_remaining_diagonal),
    )
