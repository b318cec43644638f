#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
import numpy as np
import pytest

from gaussfield.dyadic.grid import check_in_cube, grid_points, grid_shape, node_numbers
from gaussfield.utils.exceptions import CapExceededException, DomainException


def test_grid_shape():
    assert grid_shape(2, 2) == (5, 5)


def test_grid_points_row_major():
    points = grid_points(2, 1)
    assert points.shape == (9, 2)
    np.testing.assert_array_equal(points[:3], [[0.0, 0.0], [0.0, 0.5], [0.0, 1.0]])
    np.testing.assert_array_equal(points[3], [0.5, 0.0])


def test_grid_points_cap():
    with pytest.raises(CapExceededException):
        grid_points(2, 4, cap=100)


def test_grid_points_negative_resolution():
    with pytest.raises(DomainException):
        grid_points(1, -1)


def test_node_numbers_invert_grid():
    points = grid_points(2, 2)
    np.testing.assert_array_equal(node_numbers(points, 2), np.arange(25))


def test_node_numbers_coarser_points():
    assert node_numbers(np.array([[0.5]]), 3).tolist() == [4]


def test_node_numbers_rejects_off_grid():
    with pytest.raises(DomainException):
        node_numbers(np.array([[0.3]]), 3)


@pytest.mark.parametrize(
    "points, dim",
    [
        pytest.param([1.5], 1),
        pytest.param([[0.5, -0.1]], 2),
        pytest.param([[0.5, 0.5, 0.5]], 2),
    ],
)
def test_check_in_cube_rejects(points, dim):
    with pytest.raises(DomainException):
        check_in_cube(np.array(points), dim)


def test_check_in_cube_single_point():
    assert check_in_cube(np.array([0.25, 0.5]), 2).shape == (1, 2)
