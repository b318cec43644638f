#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""GaussField builds Gaussian random fields on Hölder spaces and spaces of measures.

This module provides the main entry location for the program executions.
"""
import sys

from gaussfield.cli import main

if __name__ == "__main__":
    sys.exit(main(sys.argv))
