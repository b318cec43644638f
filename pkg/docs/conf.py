#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Sphinx configuration."""
import os
import sys

sys.path.insert(0, os.path.abspath(".."))

import gaussfield  # noqa  # isort:skip

project = "gaussfield"
author = "GaussField Contributors"
copyright = f"2021, {author}"
version = gaussfield.__version__
extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.mathjax",
    "sphinx_autodoc_typehints",
]
