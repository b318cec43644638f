#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Provides an interface for validation report writers."""
import csv
import json
import logging
from abc import ABCMeta, abstractmethod
from pathlib import Path
from typing import Sequence

from gaussfield.reporting.validationrecord import FIELD_NAMES, ValidationRecord
from gaussfield.utils.console import print_records


# pylint: disable=too-few-public-methods
class AbstractReportBackend(metaclass=ABCMeta):
    """An interface for a validation report writer."""

    @abstractmethod
    def write_data(self, records: Sequence[ValidationRecord]) -> None:
        """Write the validation records.

        Args:
            records: the records to write
        """


def _prepare_parent(path: Path) -> Path:
    path = path.resolve()
    if not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    return path


# pylint: disable=too-few-public-methods
class CSVReportBackend(AbstractReportBackend):
    """A report backend writing one CSV row per record.

    The file is overwritten on every call, so two runs with the same
    configuration produce byte-identical files.
    """

    _logger = logging.getLogger(__name__)

    def __init__(self, path: Path) -> None:
        self._path = path

    def write_data(self, records: Sequence[ValidationRecord]) -> None:
        output_file = _prepare_parent(self._path)
        with output_file.open(mode="w", newline="") as csv_file:
            csv_writer = csv.DictWriter(
                csv_file, fieldnames=FIELD_NAMES, lineterminator="\n"
            )
            csv_writer.writeheader()
            for record in records:
                csv_writer.writerow(record.to_row())
        self._logger.info("Wrote %d report records to %s", len(records), output_file)


# pylint: disable=too-few-public-methods
class JSONReportBackend(AbstractReportBackend):
    """A report backend writing the records as a structured-text list."""

    def __init__(self, path: Path) -> None:
        self._path = path

    def write_data(self, records: Sequence[ValidationRecord]) -> None:
        output_file = _prepare_parent(self._path)
        payload = [
            {
                "metric": record.metric,
                "parameters": record.parameters,
                "value": float(record.value),
                "tolerance": float(record.tolerance),
                "passed": bool(record.passed),
            }
            for record in records
        ]
        output_file.write_text(json.dumps(payload, indent=2) + "\n")


# pylint: disable=too-few-public-methods
class ConsoleReportBackend(AbstractReportBackend):
    """Backend that renders the records as a table on the console."""

    def __init__(self, title: str = "") -> None:
        self._title = title

    def write_data(self, records: Sequence[ValidationRecord]) -> None:
        print_records(records, self._title)
