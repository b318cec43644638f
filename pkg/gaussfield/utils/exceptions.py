#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Provides custom exception types."""


class GaussFieldException(Exception):
    """Base type of all exceptions raised by GaussField on invalid input or state."""


class ConfigurationException(GaussFieldException):
    """An exception type that's raised if the run has no proper configuration."""


class DomainException(GaussFieldException):
    """Raised if an argument lies outside the domain of an operation.

    Typical causes are points outside the unit cube, malformed dyadic indices, or
    vectors whose length does not match the basis they refer to.
    """


class CapExceededException(GaussFieldException):
    """Raised if a basis or a grid would exceed the configured memory cap."""


class NotPositiveSemidefiniteException(GaussFieldException):
    """Raised if a covariance matrix shows a clearly negative pivot."""


class MeasureValuedKernelException(GaussFieldException):
    """Raised if a measure-valued kernel is asked for a pointwise value."""


class DegenerateMeasureException(GaussFieldException):
    """Raised if a base measure has no mass or a negative density."""


class InvalidDecompositionException(GaussFieldException):
    """Raised if a decomposition cannot be used for sampling or evaluation."""


class InsufficientSamplesException(GaussFieldException):
    """Raised if an estimator receives fewer samples than it needs."""


class RuntimeBudgetError(Exception):
    """A custom exception used to report errors in use of the RuntimeBudget class"""
