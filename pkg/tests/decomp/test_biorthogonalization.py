#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
import logging

import numpy as np
import pytest

from gaussfield.decomp.biorthogonalization import (
    Decomposition,
    biorthogonalize,
    verify_biorthogonality,
)
from gaussfield.decomp.norms import NormMode
from gaussfield.decomp.tensorcoefficients import (
    BasisMeta,
    TensorCoefficients,
    tensor_coefficients,
)
from gaussfield.kernels.kernelspec import ExpAlpha
from gaussfield.utils.exceptions import (
    DomainException,
    InvalidDecompositionException,
    NotPositiveSemidefiniteException,
)


def _two_by_two(matrix):
    return TensorCoefficients(BasisMeta(1, 0, 0.5), np.array(matrix, dtype=float))


def test_correlated_pair():
    d = biorthogonalize(
        _two_by_two([[1.0, 0.5], [0.5, 1.0]]),
        norm_mode=NormMode.COEFFICIENT_EUCLIDEAN,
    )
    np.testing.assert_allclose(d.lambdas, [1.25, 0.75])
    np.testing.assert_allclose(d.pivots, [1.0, 0.75])
    assert d.pivot_indices.tolist() == [0, 1]
    np.testing.assert_allclose(np.linalg.norm(d.phis, axis=1), 1.0)


def test_diagonal_matrix():
    d = biorthogonalize(
        _two_by_two([[1.0, 0.0], [0.0, 2.0]]),
        norm_mode=NormMode.COEFFICIENT_EUCLIDEAN,
    )
    np.testing.assert_allclose(d.lambdas, [2.0, 1.0])
    assert d.pivot_indices.tolist() == [1, 0]


def test_not_positive_semidefinite():
    with pytest.raises(NotPositiveSemidefiniteException):
        biorthogonalize(
            _two_by_two([[1.0, 2.0], [2.0, 1.0]]),
            norm_mode=NormMode.COEFFICIENT_EUCLIDEAN,
        )


@pytest.mark.parametrize("pivot_tol", [pytest.param(0.0), pytest.param(-1.0)])
def test_pivot_tol_must_be_positive(pivot_tol):
    with pytest.raises(DomainException):
        biorthogonalize(_two_by_two(np.eye(2)), pivot_tol=pivot_tol)


def test_rank_deficient_matrix_stops_early():
    d = biorthogonalize(
        _two_by_two([[1.0, 1.0], [1.0, 1.0]]),
        norm_mode=NormMode.COEFFICIENT_EUCLIDEAN,
    )
    assert d.size == 1
    np.testing.assert_allclose(d.lambdas, [2.0])
    assert d.report.reconstruction_residual == pytest.approx(0.0, abs=1e-12)


def test_zero_matrix_has_no_terms():
    d = biorthogonalize(_two_by_two(np.zeros((2, 2))))
    assert d.size == 0


def test_total_variation_needs_measures():
    with pytest.raises(DomainException):
        biorthogonalize(_two_by_two(np.eye(2)), norm_mode=NormMode.TOTAL_VARIATION)


def test_lambdas_are_nonincreasing(exp_alpha_decomposition):
    assert np.all(np.diff(exp_alpha_decomposition.lambdas) <= 0.0)


def test_pivots_are_nonincreasing(exp_alpha_decomposition):
    assert np.all(np.diff(exp_alpha_decomposition.pivots) <= 1e-15)


def test_biorthogonal_system(exp_alpha_decomposition, exp_alpha_tensor):
    d = exp_alpha_decomposition
    pairings = d.etas @ exp_alpha_tensor.matrix @ d.etas.T
    np.testing.assert_allclose(
        pairings, np.diag(d.lambdas), atol=1e-8 * d.lambdas[0]
    )
    np.testing.assert_allclose(d.etas @ d.phis.T, np.eye(d.size), atol=1e-8)


def test_reconstruction_matches_eigendecomposition(
    exp_alpha_decomposition, exp_alpha_tensor
):
    d = exp_alpha_decomposition
    coordinates = d.pairing_coordinates(exp_alpha_tensor)
    rebuilt = (coordinates * d.lambdas[None, :]) @ coordinates.T
    eigenvalues, eigenvectors = np.linalg.eigh(exp_alpha_tensor.matrix)
    oracle = (eigenvectors * eigenvalues) @ eigenvectors.T
    np.testing.assert_allclose(
        rebuilt, oracle, atol=1e-8 * np.abs(oracle).max()
    )


def test_biorthogonality_at_level_six():
    tc = tensor_coefficients(ExpAlpha(0.5), 1, 6)
    d = biorthogonalize(tc)
    assert d.size == 65
    assert d.report.max_off_diagonal <= 1e-8 * d.lambdas[0]
    assert d.report.min_remaining_diagonal >= -1e-10


def test_report_attached(exp_alpha_decomposition):
    report = exp_alpha_decomposition.report
    assert report is not None
    assert report.max_lambda == exp_alpha_decomposition.lambdas[0]
    assert set(report.to_dict()) == {
        "max_off_diagonal",
        "min_lambda",
        "max_lambda",
        "reconstruction_residual",
        "min_remaining_diagonal",
    }


def test_verify_empty_decomposition():
    tc = _two_by_two(np.eye(2))
    empty = Decomposition(tc.meta, np.zeros(0), np.zeros((0, 2)), np.zeros((0, 2)))
    report = verify_biorthogonality(empty, tc)
    assert report.reconstruction_residual == pytest.approx(1.0)


def test_decomposition_rejects_wrong_shapes():
    with pytest.raises(InvalidDecompositionException):
        Decomposition(
            BasisMeta(1, 0, 0.5), np.ones(1), np.ones((1, 3)), np.ones((1, 3))
        )


def test_logs_pivot_count(caplog):
    with caplog.at_level(logging.INFO):
        biorthogonalize(_two_by_two(np.eye(2)))
    assert "Pivoted 2 of 2 directions" in caplog.text


def test_warns_on_clamped_diagonal(caplog):
    with caplog.at_level(logging.WARNING):
        d = biorthogonalize(
            _two_by_two([[1.0, 1.0], [1.0, 1.0 - 1e-14]]),
            norm_mode=NormMode.COEFFICIENT_EUCLIDEAN,
        )
    assert d.size == 1
    assert "Clamped remaining diagonal" in caplog.text
