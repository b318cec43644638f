#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
import numpy as np
import pytest

from gaussfield.decomp.norms import (
    NormMode,
    euclidean_norms,
    grid_hoelder_norms,
    grid_holder_seminorm,
    total_variation_norms,
)
from gaussfield.dyadic.dyadicindex import enumerate_dyadic
from gaussfield.dyadic.grid import grid_points
from gaussfield.kernels.basemeasure import Counting, Lebesgue
from gaussfield.utils.exceptions import DomainException


def test_norm_mode_values():
    assert [mode.value for mode in NormMode] == [
        "grid-hoelder",
        "coefficient-euclidean",
        "total-variation",
    ]


@pytest.mark.parametrize("gamma", [pytest.param(0.5), pytest.param(1.0)])
def test_seminorm_of_identity(gamma):
    values = grid_points(1, 4)[:, 0]
    assert grid_holder_seminorm(values, 1, 4, gamma) == pytest.approx(1.0)


def test_seminorm_of_square_root():
    values = np.sqrt(grid_points(1, 6)[:, 0])
    assert grid_holder_seminorm(values, 1, 6, 0.5) == pytest.approx(1.0)
    assert grid_holder_seminorm(values, 1, 6, 1.0) == pytest.approx(8.0)


def test_seminorm_of_constant_is_zero():
    assert grid_holder_seminorm(np.ones(9), 1, 3, 0.5) == 0.0


def test_seminorm_batch_and_two_dimensions():
    points = grid_points(2, 3)
    values = np.stack([points[:, 0], points[:, 0] + points[:, 1]])
    result = grid_holder_seminorm(values, 2, 3, 1.0)
    np.testing.assert_allclose(result, [1.0, np.sqrt(2.0)])


@pytest.mark.parametrize(
    "values, gamma",
    [
        pytest.param(np.ones(9), 0.0),
        pytest.param(np.ones(9), 1.5),
        pytest.param(np.ones(8), 0.5),
        pytest.param(np.ones((1, 0)), 0.5),
    ],
)
def test_seminorm_rejects(values, gamma):
    with pytest.raises(DomainException):
        grid_holder_seminorm(values, 1, 3, gamma)


@pytest.mark.parametrize("alpha", [pytest.param(0.25), pytest.param(0.5)])
def test_unit_vectors_have_unit_norm(alpha):
    indices = enumerate_dyadic(1, 3)
    norms = grid_hoelder_norms(np.eye(len(indices)), indices, alpha, 3)
    np.testing.assert_allclose(norms, 1.0)


def test_euclidean_norms():
    np.testing.assert_allclose(euclidean_norms(np.array([[3.0, 4.0], [0, 1]])), [5, 1])


@pytest.mark.parametrize(
    "k_max, coefficients",
    [
        pytest.param(1, [1.0, -1.0, 0.0]),
        pytest.param(0, [1.0, -1.0]),
    ],
)
def test_total_variation_of_linear_density(k_max, coefficients):
    indices = enumerate_dyadic(1, k_max)
    norms = total_variation_norms(np.array([coefficients]), indices, Lebesgue(1), k_max)
    assert norms[0] == pytest.approx(0.5)


def test_total_variation_of_positive_density():
    indices = enumerate_dyadic(1, 2)
    coefficients = np.array([[1.0, 1.0, 0.0, 0.0, 0.0]])
    assert total_variation_norms(coefficients, indices, Lebesgue(1), 2)[
        0
    ] == pytest.approx(1.0)


def test_total_variation_in_two_dimensions():
    indices = enumerate_dyadic(2, 1)
    coefficients = np.zeros((1, len(indices)))
    coefficients[0, :4] = 1.0
    assert total_variation_norms(coefficients, indices, Lebesgue(2), 1)[
        0
    ] == pytest.approx(1.0)


def test_total_variation_against_counting_measure():
    indices = enumerate_dyadic(1, 1)
    base = Counting(((0.0,), (0.5,)))
    coefficients = np.array([[-2.0, 0.0, 3.0]])
    assert total_variation_norms(coefficients, indices, base, 1)[0] == pytest.approx(
        2.0 + 2.0
    )
