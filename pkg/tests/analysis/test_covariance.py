#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
import logging
import math

import numpy as np
import pytest

from gaussfield.analysis.covariance import (
    Estimate,
    covariance_target,
    empirical_covariance,
    functional_coordinates,
    mean_estimate,
    pairing_moments,
    sample_pairings,
)
from gaussfield.dyadic.dyadicindex import DyadicIndex
from gaussfield.dyadic.functionals import CoefficientFunctional, coeff_functional
from gaussfield.kernels.kernelspec import ExpAlpha, eval_kernel
from gaussfield.sampler.fieldsample import draw_sample, draw_samples
from gaussfield.utils.exceptions import InsufficientSamplesException


def test_estimate_within():
    estimate = Estimate(1.0, 0.1, 100)
    assert estimate.within(1.35)
    assert not estimate.within(1.5)
    assert estimate.within(1.5, floor=0.5)


def test_mean_estimate():
    estimate = mean_estimate(np.array([1.0, 2.0, 3.0, 4.0]))
    assert estimate.value == 2.5
    assert estimate.standard_error == pytest.approx(math.sqrt(5.0 / 3.0) / 2.0)
    assert estimate.count == 4


def test_mean_estimate_needs_two_values():
    with pytest.raises(InsufficientSamplesException):
        mean_estimate(np.array([1.0]))


@pytest.mark.parametrize("x", [0.0, 0.25, 0.5])
@pytest.mark.parametrize("y", [0.0, 0.25, 0.5])
def test_target_reproduces_kernel_at_nodes(exp_alpha_decomposition, x, y):
    target = covariance_target(
        exp_alpha_decomposition,
        CoefficientFunctional.dirac([x]),
        CoefficientFunctional.dirac([y]),
    )
    expected = eval_kernel(ExpAlpha(0.5), np.array([x]), np.array([y]))
    assert target == pytest.approx(expected, abs=1e-8)


def test_functional_coordinates_of_empty_functional(exp_alpha_decomposition):
    empty = CoefficientFunctional(())
    coordinates = functional_coordinates(exp_alpha_decomposition, empty)
    np.testing.assert_array_equal(coordinates, np.zeros(exp_alpha_decomposition.size))


def test_sample_pairings_for_batch_and_list(exp_alpha_decomposition):
    d = exp_alpha_decomposition
    eta = coeff_functional(DyadicIndex(2, (1,)), 0.5)
    batch = draw_samples(d, 8, 5)
    samples = [draw_sample(d, 8, stream) for stream in range(5)]
    np.testing.assert_allclose(
        sample_pairings(batch, d, eta), sample_pairings(samples, d, eta)
    )


@pytest.mark.parametrize(
    "x, y", [pytest.param(0.0, 0.0), pytest.param(0.25, 0.5), pytest.param(0.5, 0.5)]
)
def test_empirical_covariance_matches_target(exp_alpha_decomposition, x, y):
    d = exp_alpha_decomposition
    batch = draw_samples(d, 42, 20000)
    first = CoefficientFunctional.dirac([x])
    second = CoefficientFunctional.dirac([y])
    estimate = empirical_covariance(batch, d, first, second)
    assert estimate.count == 20000
    assert estimate.within(covariance_target(d, first, second))


def test_pairings_are_gaussian(exp_alpha_decomposition):
    d = exp_alpha_decomposition
    batch = draw_samples(d, 42, 20000)
    eta = CoefficientFunctional.dirac([0.25]) + CoefficientFunctional.dirac([0.75])
    moments = pairing_moments(sample_pairings(batch, d, eta))
    assert moments.gaussian()
    assert moments.skewness_error == pytest.approx(math.sqrt(6.0 / 20000))


def test_moments_detect_skewed_values():
    values = np.exp(np.linspace(-3.0, 3.0, 1000))
    assert not pairing_moments(values).gaussian()


def test_moments_need_eight_values():
    with pytest.raises(InsufficientSamplesException):
        pairing_moments(np.ones(7))


def test_moments_warn_on_constant_values(caplog):
    with caplog.at_level(logging.WARNING):
        pairing_moments(np.ones(10))
    assert "Degenerate pairings" in caplog.text
