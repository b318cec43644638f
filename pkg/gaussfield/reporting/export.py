#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Writes numeric tables as CSV files with lossless decimal floats."""
import csv
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

from gaussfield.reporting.validationrecord import format_float

_LOGGER = logging.getLogger(__name__)

Cell = Union[int, float, str]


def _render(cell: Cell) -> str:
    if isinstance(cell, (bool, str)):
        return str(cell)
    if isinstance(cell, int):
        return str(cell)
    return format_float(cell)


def write_table(
    path: Path,
    header: Sequence[str],
    rows: Iterable[Sequence[Cell]],
    comments: Optional[List[str]] = None,
) -> int:
    """Write a table to a CSV file.

    Floats are written with 17 significant digits, integers verbatim.  Optional
    comment lines are written before the header, each prefixed with ``#``.

    Args:
        path: The output file, overwritten if it exists
        header: The column names
        rows: The table rows
        comments: Metadata lines to put in front of the header

    Returns:
        The number of data rows written
    """
    path = path.resolve()
    if not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open(mode="w", newline="") as csv_file:
        for comment in comments or []:
            csv_file.write(f"# {comment}\n")
        writer = csv.writer(csv_file, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_render(cell) for cell in row])
            count += 1
    _LOGGER.info("Wrote %d rows to %s", count, path)
    return count
