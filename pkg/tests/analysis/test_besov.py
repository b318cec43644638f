#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
import math

import numpy as np
import pytest

from gaussfield.analysis.besov import (
    besov_norm_estimate,
    besov_partial_sums,
    default_t_grid,
    level_ratios,
    level_sums,
    modulus_of_continuity,
    renormalised_coefficients,
)
from gaussfield.dyadic.grid import grid_points
from gaussfield.kernels.kernelspec import ExpAlpha, kernel_matrix
from gaussfield.utils.exceptions import CapExceededException, DomainException


@pytest.fixture(scope="module")
def exponential_kernel():
    return ExpAlpha(0.5)


def test_level_sums_bin_by_finer_level():
    sums = level_sums(np.array([[1.0, -2.0, 1.0], [3.0, 1.0, 1.0], [1.0, 1.0, 1.0]]),
                      np.array([0, 1, 1]))
    np.testing.assert_allclose(sums, [1.0, 11.0])


def test_level_ratios():
    ratios = level_ratios(np.array([2.0, 1.0, 0.0, 3.0]))
    assert ratios[0] == 0.5
    assert ratios[1] == 0.0
    assert ratios[2] == math.inf


def test_renormalised_coefficients_are_symmetric(exponential_kernel):
    matrix, levels = renormalised_coefficients(exponential_kernel, 1, 3, 0.4)
    assert matrix.shape == (9, 9)
    assert levels.tolist() == [0, 0, 1, 2, 2, 3, 3, 3, 3]
    np.testing.assert_allclose(matrix, matrix.T, atol=1e-14)


def test_partial_sums_are_non_negative(exponential_kernel):
    sums = besov_partial_sums(exponential_kernel, 1, 4, 0.4)
    assert sums.shape == (5,)
    assert np.all(sums >= 0.0)


def test_sums_decay_below_the_kernel_exponent(exponential_kernel):
    ratios = level_ratios(besov_partial_sums(exponential_kernel, 1, 8, 0.4))
    assert np.all(ratios[3:] < 1.0)


def test_sums_grow_above_the_kernel_exponent(exponential_kernel):
    ratios = level_ratios(besov_partial_sums(exponential_kernel, 1, 8, 0.6))
    assert np.all(ratios[3:] > 1.0)


def test_hoelder_scaling_grows_for_every_exponent(exponential_kernel):
    sums = besov_partial_sums(exponential_kernel, 1, 6, 0.4, integrability=math.inf)
    assert np.all(level_ratios(sums)[3:] > 1.0)


@pytest.mark.parametrize("gamma", [0.0, 1.0, -0.2])
def test_partial_sums_reject_gamma(exponential_kernel, gamma):
    with pytest.raises(DomainException):
        besov_partial_sums(exponential_kernel, 1, 2, gamma)


def test_partial_sums_reject_integrability(exponential_kernel):
    with pytest.raises(DomainException):
        besov_partial_sums(exponential_kernel, 1, 2, 0.4, integrability=0.5)


def test_default_t_grid():
    grid = default_t_grid(5, 9)
    assert grid[0] == pytest.approx(1.0 / 32.0)
    assert grid[-1] == pytest.approx(1.0)
    assert np.all(np.diff(grid) > 0.0)


def test_modulus_of_constant_vanishes():
    values = np.ones((9, 9))
    np.testing.assert_array_equal(
        modulus_of_continuity(values, 1, 3, default_t_grid(3)), 0.0
    )


def test_modulus_is_non_decreasing(exponential_kernel):
    grid = grid_points(1, 5)
    values = kernel_matrix(exponential_kernel, grid, grid)
    omega = modulus_of_continuity(values, 1, 5, default_t_grid(5))
    assert omega[0] > 0.0
    assert np.all(np.diff(omega) >= 0.0)


def test_norm_estimate_increases_with_gamma(exponential_kernel):
    lower = besov_norm_estimate(exponential_kernel, 0.3, resolution=5)
    upper = besov_norm_estimate(exponential_kernel, 0.7, resolution=5)
    assert 0.0 < lower < upper


@pytest.mark.parametrize(
    "t_grid",
    [
        pytest.param([0.5], id="single"),
        pytest.param([0.5, 0.25], id="decreasing"),
        pytest.param([0.0, 1.0], id="zero"),
        pytest.param([0.5, 2.0], id="beyond-one"),
    ],
)
def test_norm_estimate_rejects_t_grid(exponential_kernel, t_grid):
    with pytest.raises(DomainException):
        besov_norm_estimate(exponential_kernel, 0.5, t_grid=t_grid, resolution=3)


def test_norm_estimate_rejects_gamma(exponential_kernel):
    with pytest.raises(DomainException):
        besov_norm_estimate(exponential_kernel, 1.0, resolution=3)


def test_norm_estimate_caps_the_table(exponential_kernel):
    with pytest.raises(CapExceededException):
        besov_norm_estimate(exponential_kernel, 0.5, resolution=5, max_points=100)
