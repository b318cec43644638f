#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
import numpy as np
import pytest

from gaussfield.analysis.covariance import mean_estimate
from gaussfield.decomp.norms import NormMode
from gaussfield.decomp.tensorcoefficients import Space
from gaussfield.kernels.basemeasure import Counting, Lebesgue
from gaussfield.measures.measuresample import covariance_target, explained_variance
from gaussfield.measures.measuresample import batch_measure_pairings
from gaussfield.measures.whitenoise import whitenoise_decomposition
from gaussfield.sampler.fieldsample import draw_samples
from gaussfield.utils.exceptions import DegenerateMeasureException, DomainException


def one(points):
    return np.ones(points.shape[0])


def identity(points):
    return points[:, 0]


def square(points):
    return points[:, 0] ** 2


def test_decomposition_is_measure_valued(white_noise_decomposition):
    d = white_noise_decomposition
    assert d.space is Space.MEASURE
    assert d.norm_mode is NormMode.TOTAL_VARIATION
    assert d.base == Lebesgue(1)
    assert d.size == 17
    assert np.all(d.lambdas > 0.0)


@pytest.mark.parametrize(
    "first, second, expected",
    [
        pytest.param(one, one, 1.0),
        pytest.param(one, identity, 0.5),
        pytest.param(identity, identity, 1.0 / 3.0),
    ],
)
def test_truncated_covariance_of_linear_tests(
    white_noise_decomposition, first, second, expected
):
    target = covariance_target(white_noise_decomposition, first, second, Lebesgue(1))
    assert target == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize(
    "first, second, expected",
    [
        pytest.param(one, one, 1.0),
        pytest.param(one, identity, 0.5),
        pytest.param(identity, identity, 1.0 / 3.0),
    ],
)
def test_monte_carlo_covariance(white_noise_decomposition, first, second, expected):
    d = white_noise_decomposition
    batch = draw_samples(d, 2024, 4000)
    products = batch_measure_pairings(
        batch, d, Lebesgue(1), first
    ) * batch_measure_pairings(batch, d, Lebesgue(1), second)
    assert mean_estimate(products).within(expected, errors=4.0)


def test_explained_variance_of_square(white_noise_decomposition):
    share = explained_variance(white_noise_decomposition, square, Lebesgue(1), 0.2)
    assert 0.99 < share <= 1.0 + 1e-12


def test_explained_variance_needs_positive_target(white_noise_decomposition):
    with pytest.raises(DomainException):
        explained_variance(white_noise_decomposition, square, Lebesgue(1), 0.0)


def test_counting_measure_has_rank_of_atoms():
    base = Counting(((0.25,), (0.75,)))
    d = whitenoise_decomposition(base, 1, 2)
    assert d.size == 2
    assert covariance_target(d, one, one, base) == pytest.approx(2.0)
    assert covariance_target(d, identity, identity, base) == pytest.approx(0.625)


def test_dimension_mismatch():
    with pytest.raises(DomainException):
        whitenoise_decomposition(Lebesgue(2), 1, 2)


def test_degenerate_base():
    with pytest.raises(DegenerateMeasureException):
        whitenoise_decomposition(Counting(()), 1, 2)
