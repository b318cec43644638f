#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
import pytest

from gaussfield.utils.exceptions import (
    CapExceededException,
    ConfigurationException,
    DegenerateMeasureException,
    DomainException,
    GaussFieldException,
    InsufficientSamplesException,
    InvalidDecompositionException,
    MeasureValuedKernelException,
    NotPositiveSemidefiniteException,
    RuntimeBudgetError,
)


@pytest.mark.parametrize(
    "exception_type",
    [
        ConfigurationException,
        DomainException,
        CapExceededException,
        NotPositiveSemidefiniteException,
        MeasureValuedKernelException,
        DegenerateMeasureException,
        InvalidDecompositionException,
        InsufficientSamplesException,
    ],
)
def test_raise_exception_with_message(exception_type):
    with pytest.raises(GaussFieldException) as exception:
        raise exception_type("foo")
    assert isinstance(exception.value, exception_type)
    assert exception.value.args[0] == "foo"


def test_runtime_budget_error_is_not_an_input_error():
    assert not issubclass(RuntimeBudgetError, GaussFieldException)
