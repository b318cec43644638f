#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Provides rich's Console handler class and a table view of validation records."""
from typing import Iterable

from rich.console import Console
from rich.table import Table

from gaussfield.reporting.validationrecord import ValidationRecord

console = Console(tab_size=4, stderr=True)


def print_records(records: Iterable[ValidationRecord], title: str = "") -> None:
    """Render validation records as a table on the shared console.

    Args:
        records: The records to show
        title: An optional table title
    """
    table = Table(title=title or None)
    for column in ("metric", "parameters", "value", "tolerance", "passed"):
        table.add_column(column)
    for record in records:
        table.add_row(
            record.metric,
            record.parameters,
            f"{record.value:.6g}",
            f"{record.tolerance:.3g}",
            "[green]yes[/green]" if record.passed else "[red]no[/red]",
        )
    console.print(table)
