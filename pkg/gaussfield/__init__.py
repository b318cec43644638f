#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""GaussField builds Gaussian random fields on Hölder spaces and spaces of measures."""
__version__ = "0.1.0"

# pylint: disable=wrong-import-position
import gaussfield.configuration as config
import gaussfield.runner as run

set_configuration = run.set_configuration
run_command = run.run_command
ReturnCode = run.ReturnCode
RunConfig = config.RunConfig
Command = config.Command

__all__ = [
    "set_configuration",
    "run_command",
    "ReturnCode",
    "RunConfig",
    "Command",
    "__version__",
]
