#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Provides the decomposition of Gaussian white noise over a base measure.

White noise has the covariance ``(A, B) -> mu(A n B)``; on continuous functions
the bilinear form is ``<eta_2, C eta_1> = int eta_1 eta_2 dmu``.  With the plain
hat functions as predual system the coefficient matrix is their Gram matrix in
L2(mu), and biorthogonalisation is Gram-Schmidt orthogonalisation in that inner
product.
"""
import logging
from typing import Optional

from gaussfield.decomp.biorthogonalization import Decomposition, biorthogonalize
from gaussfield.decomp.norms import NormMode
from gaussfield.decomp.tensorcoefficients import DEFAULT_CAP, tensor_coefficients
from gaussfield.kernels.basemeasure import BaseMeasure
from gaussfield.kernels.kernelspec import WhiteNoise
from gaussfield.utils.exceptions import DomainException

_LOGGER = logging.getLogger(__name__)


def whitenoise_decomposition(
    base: BaseMeasure,
    dim: int,
    k_max: int,
    pivot_tol: Optional[float] = None,
    cap: int = DEFAULT_CAP,
) -> Decomposition:
    """Decompose white noise over a base measure.

    Args:
        base: The base measure
        dim: The dimension
        k_max: The maximal level of the hat functions
        pivot_tol: The pivot tolerance, see `biorthogonalize`
        cap: The maximal number of basis functions

    Returns:
        The decomposition; phi_i are densities against the base measure,
        normalised in total variation

    Raises:
        DomainException: If the base measure lives in another dimension
    """
    if base.dim != dim:
        raise DomainException(f"base measure has dimension {base.dim}, expected {dim}")
    base.check()
    coefficients = tensor_coefficients(WhiteNoise(base), dim, k_max, None, cap)
    decomposition = biorthogonalize(coefficients, pivot_tol, NormMode.TOTAL_VARIATION)
    _LOGGER.info(
        "White noise over %s: %d of %d terms",
        base.name,
        decomposition.size,
        coefficients.size,
    )
    return decomposition
