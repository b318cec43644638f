#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
import numpy as np
import pytest

from gaussfield.kernels.basemeasure import Counting, Lebesgue, l2_pairing
from gaussfield.measures.measuresample import (
    batch_measure_pairings,
    check_measure_decomposition,
    density_header,
    functional_coordinates,
    pair_measure,
    sample_measure_field,
    write_density_csv,
)
from gaussfield.measures.whitenoise import whitenoise_decomposition
from gaussfield.sampler.fieldsample import draw_samples
from gaussfield.utils.exceptions import DomainException, InvalidDecompositionException


def identity(points):
    return points[:, 0]


def test_sample_density(white_noise_decomposition):
    sample = sample_measure_field(white_noise_decomposition, Lebesgue(1), 42, 5)
    assert sample.stream_index == 5
    assert sample.atoms is None
    assert sample.density.shape == (17,)
    values = sample.density_at(np.array([[0.0], [1.0]]))
    np.testing.assert_allclose(values, sample.density[:2])


def test_pair_measure_matches_batch(white_noise_decomposition):
    d = white_noise_decomposition
    batch = draw_samples(d, 42, 3)
    pairings = batch_measure_pairings(batch, d, Lebesgue(1), identity)
    for stream in range(3):
        sample = sample_measure_field(d, Lebesgue(1), 42, stream)
        assert pair_measure(sample, identity) == pytest.approx(pairings[stream])


def test_pair_measure_is_l2_pairing(white_noise_decomposition):
    sample = sample_measure_field(white_noise_decomposition, Lebesgue(1), 1, 0)
    expected = l2_pairing(Lebesgue(1), identity, sample.density_at, 4)
    assert pair_measure(sample, identity) == expected


def test_counting_sample_has_atoms():
    base = Counting(((0.25,), (0.75,)))
    d = whitenoise_decomposition(base, 1, 2)
    sample = sample_measure_field(d, base, 42, 0)
    assert sample.atoms is not None
    np.testing.assert_array_equal(sample.atoms.points, [[0.25], [0.75]])
    np.testing.assert_allclose(
        sample.atoms.weights, sample.density_at(sample.atoms.points)
    )
    expected = 0.25 * sample.atoms.weights[0] + 0.75 * sample.atoms.weights[1]
    assert pair_measure(sample, identity) == pytest.approx(expected)


def test_check_rejects_hoelder_decomposition(exp_alpha_decomposition):
    with pytest.raises(InvalidDecompositionException):
        check_measure_decomposition(exp_alpha_decomposition, Lebesgue(1))


def test_check_rejects_other_base(white_noise_decomposition):
    with pytest.raises(DomainException):
        check_measure_decomposition(
            white_noise_decomposition, Counting(((0.5,),))
        )


def test_functional_coordinates_shape(white_noise_decomposition):
    coordinates = functional_coordinates(
        white_noise_decomposition, Lebesgue(1), identity
    )
    assert coordinates.shape == (white_noise_decomposition.size,)


def test_density_header():
    assert density_header(1) == ("sample", "x1", "density")
    assert density_header(2, atomic=True) == ("sample", "x1", "x2", "weight")


def test_write_density_csv(tmp_path, white_noise_decomposition):
    samples = [
        sample_measure_field(white_noise_decomposition, Lebesgue(1), 42, stream)
        for stream in range(2)
    ]
    path = tmp_path / "density.csv"
    assert write_density_csv(path, samples, 3) == 18
    lines = path.read_text().splitlines()
    assert lines[:3] == [
        "# base=lebesgue",
        "# kernel=white-noise:lebesgue",
        "sample,x1,density",
    ]


def test_write_counting_atoms(tmp_path):
    base = Counting(((0.25,), (0.75,)))
    d = whitenoise_decomposition(base, 1, 2)
    path = tmp_path / "atoms.csv"
    assert write_density_csv(path, [sample_measure_field(d, base, 3, 0)], 8) == 2
    assert path.read_text().splitlines()[2] == "sample,x1,weight"


def test_write_without_samples(tmp_path):
    with pytest.raises(DomainException):
        write_density_csv(tmp_path / "empty.csv", [], 3)
