#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
import math

import numpy as np
import pytest

from gaussfield.decomp.tensorcoefficients import Space
from gaussfield.kernels.basemeasure import Lebesgue
from gaussfield.measures.gaussiancovariance import (
    default_prefactor,
    gaussian_covariance_pairing,
    gaussian_measure_coefficients,
    gaussian_measure_decomposition,
    representing_density,
)
from gaussfield.measures.measuresample import covariance_target
from gaussfield.utils.exceptions import DomainException

SQUARE_EXPONENTIAL_MASS = 0.9243101036


def one(points):
    return np.ones(points.shape[0])


def identity(points):
    return points[:, 0]


def test_default_prefactor():
    assert default_prefactor(1) == pytest.approx(math.sqrt(2.0 * math.pi))
    assert default_prefactor(2) == pytest.approx(2.0 * math.pi)


def test_representing_density_peak():
    density = representing_density(np.array([[0.5]]), np.array([[0.5], [1.5]]))
    assert density[0, 0] == pytest.approx(1.0)
    assert density[0, 1] == pytest.approx(math.exp(-0.5))


@pytest.mark.parametrize("prefactor", [pytest.param(0.0), pytest.param(-2.0)])
def test_prefactor_must_be_positive(prefactor):
    with pytest.raises(DomainException):
        representing_density(np.zeros((1, 1)), np.zeros((1, 1)), prefactor)


def test_pairing_of_constants():
    assert gaussian_covariance_pairing(one, one) == pytest.approx(
        SQUARE_EXPONENTIAL_MASS, rel=1e-8
    )


def test_pairing_is_symmetric():
    first = gaussian_covariance_pairing(one, identity, resolution=4)
    second = gaussian_covariance_pairing(identity, one, resolution=4)
    assert first == pytest.approx(second, rel=1e-12)


def test_pairing_scales_with_prefactor():
    base = gaussian_covariance_pairing(one, one, resolution=3)
    doubled = gaussian_covariance_pairing(
        one, one, prefactor=2.0 * default_prefactor(1), resolution=3
    )
    assert doubled == pytest.approx(2.0 * base)


def test_coefficients_carry_density_map():
    tc = gaussian_measure_coefficients(1, 3)
    assert tc.space is Space.MEASURE
    assert tc.base == Lebesgue(1)
    assert tc.density_map.shape == (9, 9)
    assert tc.meta.family.startswith("gaussian-measure:")


def test_truncated_covariance_of_constants():
    d = gaussian_measure_decomposition(1, 4)
    target = covariance_target(d, one, one, Lebesgue(1))
    assert target == pytest.approx(SQUARE_EXPONENTIAL_MASS, rel=5e-3)
