#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Pairings of kernels with coefficient functionals."""
from typing import Sequence

import numpy as np

from gaussfield.dyadic.functionals import CoefficientFunctional
from gaussfield.kernels.kernelspec import KernelSpec, kernel_matrix


def kernel_pairing(
    spec: KernelSpec, a: CoefficientFunctional, b: CoefficientFunctional
) -> float:
    """Pair a kernel with the tensor product of two Dirac combinations.

    Args:
        spec: A pointwise kernel
        a: The first functional
        b: The second functional

    Returns:
        ``sum_p sum_q w_p w_q c(x_p, y_q)``
    """
    if not a.atoms or not b.atoms:
        return 0.0
    values = kernel_matrix(spec, a.points, b.points)
    return float(a.weights @ values @ b.weights)


def kernel_pairing_matrix(
    spec: KernelSpec, functionals: Sequence[CoefficientFunctional]
) -> np.ndarray:
    """All pairings of a kernel with tensor products of a list of functionals.

    Args:
        spec: A pointwise kernel
        functionals: The functionals

    Returns:
        The symmetric matrix of pairings
    """
    size = len(functionals)
    result = np.zeros((size, size))
    for row in range(size):
        for col in range(row, size):
            result[row, col] = kernel_pairing(spec, functionals[row], functionals[col])
            result[col, row] = result[row, col]
    return result
