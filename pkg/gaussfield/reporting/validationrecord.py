#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Provides the record type shared by all validation checks."""
from dataclasses import dataclass
from typing import Dict, List, Mapping, Sequence


def format_float(value: float) -> str:
    """Format a float with 17 significant digits.

    Args:
        value: The value to format

    Returns:
        A decimal representation that round-trips to the same binary64 value
    """
    return "%.17g" % float(value)


def format_parameters(parameters: Mapping[str, object]) -> str:
    """Render a parameter mapping as a stable ``key=value;...`` string.

    Args:
        parameters: The parameters of a check

    Returns:
        The rendered parameters, keys in insertion order
    """
    parts = []
    for key, value in parameters.items():
        rendered = format_float(value) if isinstance(value, float) else str(value)
        parts.append(f"{key}={rendered}")
    return ";".join(parts)


@dataclass(frozen=True)
class ValidationRecord:
    """Encapsulates the outcome of one numerical check."""

    metric: str
    """Name of the checked quantity."""

    parameters: str
    """The parameters of the check, see `format_parameters`."""

    value: float
    """The measured value."""

    tolerance: float
    """The tolerance or bound the value was compared against."""

    passed: bool
    """Whether the check passed."""

    def to_row(self) -> Dict[str, str]:
        """Convert the record to a CSV row.

        Returns:
            The record with all fields rendered as strings
        """
        return {
            "metric": self.metric,
            "parameters": self.parameters,
            "value": format_float(self.value),
            "tolerance": format_float(self.tolerance),
            "passed": "true" if self.passed else "false",
        }


FIELD_NAMES: List[str] = ["metric", "parameters", "value", "tolerance", "passed"]


def all_passed(records: Sequence[ValidationRecord]) -> bool:
    """Check whether every record passed.

    Args:
        records: The records to check

    Returns:
        True if no record failed
    """
    return all(record.passed for record in records)
