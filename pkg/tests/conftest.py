#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
import numpy as np
import pytest

import gaussfield.configuration as config
from gaussfield.decomp.biorthogonalization import biorthogonalize
from gaussfield.decomp.norms import NormMode
from gaussfield.decomp.tensorcoefficients import tensor_coefficients
from gaussfield.kernels.basemeasure import Lebesgue
from gaussfield.kernels.kernelspec import ExpAlpha
from gaussfield.measures.whitenoise import whitenoise_decomposition
from gaussfield.utils.runtimebudget import RuntimeBudget

# -- FIXTURES --------------------------------------------------------------------------


@pytest.fixture(autouse=True)
def reset_configuration():
    """Automatically reset the configuration singleton"""
    config.configuration = config.RunConfig()


@pytest.fixture(autouse=True)
def reset_runtime_budgets():
    yield
    RuntimeBudget.clear()


@pytest.fixture(scope="session")
def exp_alpha_kernel():
    return ExpAlpha(0.5)


@pytest.fixture(scope="session")
def exp_alpha_tensor(exp_alpha_kernel):
    return tensor_coefficients(exp_alpha_kernel, 1, 5)


@pytest.fixture(scope="session")
def exp_alpha_decomposition(exp_alpha_tensor):
    return biorthogonalize(exp_alpha_tensor, norm_mode=NormMode.GRID_HOELDER)


@pytest.fixture(scope="session")
def white_noise_decomposition():
    return whitenoise_decomposition(Lebesgue(1), 1, 4)


@pytest.fixture()
def line_points():
    return np.array([[0.0], [0.25], [0.5], [0.75], [1.0]])
