#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
import numpy as np
import pytest

from gaussfield.decomp.biorthogonalization import Decomposition
from gaussfield.decomp.tensorcoefficients import BasisMeta
from gaussfield.sampler.fieldsample import (
    FieldSample,
    check_lambdas,
    draw_sample,
    draw_samples,
    retained_terms,
)
from gaussfield.utils.exceptions import DomainException, InvalidDecompositionException
from gaussfield.utils.randomness import RNG_ALGORITHM, standard_normals


def _decomposition(lambdas):
    meta = BasisMeta(1, 0, 0.5)
    size = len(lambdas)
    return Decomposition(meta, np.array(lambdas), np.eye(size, 2), np.eye(size, 2))


def test_draw_sample_coefficients():
    d = _decomposition([4.0, 1.0])
    sample = draw_sample(d, 42, 3)
    np.testing.assert_array_equal(
        sample.coeffs, np.array([2.0, 1.0]) * standard_normals(42, 3, 2)
    )
    assert sample.stream_index == 3
    assert sample.rng_algorithm == RNG_ALGORITHM
    assert sample.terms == 2


def test_draw_sample_is_deterministic(exp_alpha_decomposition):
    first = draw_sample(exp_alpha_decomposition, 7, 0)
    second = draw_sample(exp_alpha_decomposition, 7, 0)
    np.testing.assert_array_equal(first.coeffs, second.coeffs)


def test_streams_differ(exp_alpha_decomposition):
    first = draw_sample(exp_alpha_decomposition, 7, 0)
    second = draw_sample(exp_alpha_decomposition, 7, 1)
    assert not np.array_equal(first.coeffs, second.coeffs)


def test_batch_rows_match_single_draws(exp_alpha_decomposition):
    batch = draw_samples(exp_alpha_decomposition, 5, 6, first_stream=10)
    assert len(batch) == 6
    for row, sample in enumerate(batch):
        single = draw_sample(exp_alpha_decomposition, 5, 10 + row)
        assert sample.stream_index == single.stream_index
        np.testing.assert_array_equal(sample.coeffs, single.coeffs)


@pytest.mark.parametrize("workers", [pytest.param(2), pytest.param(4)])
def test_batch_is_independent_of_workers(exp_alpha_decomposition, workers):
    serial = draw_samples(exp_alpha_decomposition, 5, 40, workers=1)
    parallel = draw_samples(exp_alpha_decomposition, 5, 40, workers=workers)
    np.testing.assert_array_equal(serial.coeffs, parallel.coeffs)


def test_batch_threads_from_environment(monkeypatch, exp_alpha_decomposition):
    monkeypatch.setenv("GAUSSFIELD_THREADS", "3")
    threaded = draw_samples(exp_alpha_decomposition, 5, 10)
    monkeypatch.delenv("GAUSSFIELD_THREADS")
    np.testing.assert_array_equal(
        threaded.coeffs, draw_samples(exp_alpha_decomposition, 5, 10).coeffs
    )


def test_negative_sample_count(exp_alpha_decomposition):
    with pytest.raises(DomainException):
        draw_samples(exp_alpha_decomposition, 5, -1)


def test_empty_batch(exp_alpha_decomposition):
    assert len(draw_samples(exp_alpha_decomposition, 5, 0)) == 0


@pytest.mark.parametrize(
    "cutoff, expected",
    [
        pytest.param(0.0, 4),
        pytest.param(0.1, 4),
        pytest.param(0.125, 3),
        pytest.param(0.25, 2),
        pytest.param(0.5, 1),
        pytest.param(0.9, 1),
    ],
)
def test_retained_terms(cutoff, expected):
    d = _decomposition([0.5, 0.25, 0.125, 0.125])
    assert retained_terms(d, cutoff) == expected


@pytest.mark.parametrize("cutoff", [pytest.param(-0.1), pytest.param(1.0)])
def test_retained_terms_range(cutoff):
    with pytest.raises(DomainException):
        retained_terms(_decomposition([1.0]), cutoff)


def test_cutoff_prefix_of_full_sample():
    d = _decomposition([0.5, 0.25, 0.125, 0.125])
    full = draw_sample(d, 1, 0)
    truncated = draw_sample(d, 1, 0, energy_cutoff=0.25)
    np.testing.assert_array_equal(truncated.coeffs, full.coeffs[:2])


def test_check_lambdas_rejects_negative():
    with pytest.raises(InvalidDecompositionException):
        check_lambdas(_decomposition([1.0, -0.5]))


def test_seed_out_of_range():
    with pytest.raises(DomainException):
        draw_sample(_decomposition([1.0]), -1, 0)


def test_sample_coefficients_read_only():
    sample = FieldSample(np.array([1.0, 2.0]), 0, 0, BasisMeta(1, 0, 0.5))
    with pytest.raises(ValueError):
        sample.coeffs[0] = 3.0
