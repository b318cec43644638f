#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Saves and loads decompositions as JSON documents.

A document holds a ``metadata`` object, the arrays ``lambdas``, ``phis`` and
``etas`` (row-major nested lists), the pivots, the verification report and,
optionally, the tensor coefficients flattened along the symmetric square
ordering.  Floats are written with the shortest representation that reads back
to the same binary64 value.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import numpy as np

import gaussfield
from gaussfield.decomp.biorthogonalization import Decomposition, VerificationReport
from gaussfield.decomp.norms import NormMode
from gaussfield.decomp.tensorcoefficients import BasisMeta, Space, TensorCoefficients
from gaussfield.dyadic.squareordering import OrderingMode
from gaussfield.kernels.kernelspec import parse_base
from gaussfield.utils.exceptions import (
    ConfigurationException,
    InvalidDecompositionException,
)

_LOGGER = logging.getLogger(__name__)

FORMAT_NAME = "gaussfield-decomposition"
FORMAT_VERSION = 1


def _base_name(d: Decomposition) -> Optional[str]:
    if d.base is None:
        return None
    try:
        parse_base(d.base.name, d.meta.dim)
    except ConfigurationException as error:
        raise ConfigurationException(
            f"base measure {d.base.name!r} cannot be stored in a decomposition file"
        ) from error
    return d.base.name


def decomposition_to_dict(
    d: Decomposition, tc: Optional[TensorCoefficients] = None
) -> Dict[str, Any]:
    """Convert a decomposition to plain JSON types.

    Args:
        d: The decomposition
        tc: Tensor coefficients to store along with it

    Returns:
        The document

    Raises:
        ConfigurationException: If the base measure has no stored form
    """
    metadata: Dict[str, Any] = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "generator": f"gaussfield {gaussfield.__version__}",
        "family": d.meta.family,
        "alpha": d.meta.alpha,
        "dim": d.meta.dim,
        "k_max": d.meta.k_max,
        "basis_size": d.meta.size,
        "norm_mode": d.norm_mode.value,
        "pivot_tol": d.pivot_tol,
        "space": d.space.value,
        "base": _base_name(d),
    }
    document: Dict[str, Any] = {
        "metadata": metadata,
        "lambdas": d.lambdas.tolist(),
        "phis": d.phis.tolist(),
        "etas": d.etas.tolist(),
        "pivots": np.asarray(d.pivots, dtype=float).tolist(),
        "pivot_indices": np.asarray(d.pivot_indices, dtype=np.int64).tolist(),
        "report": d.report.to_dict() if d.report is not None else None,
    }
    if tc is not None:
        document["tensor"] = {
            "ordering": OrderingMode.SYMMETRIC.value,
            "values": tc.in_square_order(OrderingMode.SYMMETRIC).tolist(),
        }
        if tc.density_map is not None:
            document["tensor"]["density_map"] = tc.density_map.tolist()
    return document


def _require(document: Dict[str, Any], key: str) -> Any:
    if key not in document:
        raise InvalidDecompositionException(f"decomposition file lacks {key!r}")
    return document[key]


def decomposition_from_dict(
    document: Dict[str, Any]
) -> Tuple[Decomposition, Optional[TensorCoefficients]]:
    """Rebuild a decomposition from its document.

    Args:
        document: The parsed JSON document

    Returns:
        The decomposition and the stored tensor coefficients, if any

    Raises:
        InvalidDecompositionException: If the document is malformed
    """
    metadata = _require(document, "metadata")
    if metadata.get("format") != FORMAT_NAME:
        raise InvalidDecompositionException("not a gaussfield decomposition file")
    try:
        meta = BasisMeta(
            dim=int(metadata["dim"]),
            k_max=int(metadata["k_max"]),
            alpha=None if metadata["alpha"] is None else float(metadata["alpha"]),
            family=str(metadata["family"]),
        )
        space = Space(metadata["space"])
        base = None
        if metadata.get("base") is not None:
            base = parse_base(metadata["base"], meta.dim)
        lambdas = np.array(_require(document, "lambdas"), dtype=float)
        report = document.get("report")
        decomposition = Decomposition(
            meta=meta,
            lambdas=lambdas,
            phis=np.array(_require(document, "phis"), dtype=float),
            etas=np.array(_require(document, "etas"), dtype=float),
            norm_mode=NormMode(metadata["norm_mode"]),
            pivot_tol=float(metadata["pivot_tol"]),
            space=space,
            base=base,
            pivots=np.array(document.get("pivots", []), dtype=float),
            pivot_indices=np.array(document.get("pivot_indices", []), dtype=np.int64),
            report=VerificationReport(**report) if report else None,
        )
        tensor = document.get("tensor")
        coefficients = None
        if tensor is not None:
            density_map = tensor.get("density_map")
            coefficients = TensorCoefficients.from_square_order(
                meta,
                np.array(tensor["values"], dtype=float),
                OrderingMode(tensor["ordering"]),
                space=space,
                base=base,
                density_map=(
                    None
                    if density_map is None
                    else np.array(density_map, dtype=float)
                ),
            )
    except (KeyError, TypeError, ValueError, ConfigurationException) as error:
        raise InvalidDecompositionException(
            f"malformed decomposition file: {error}"
        ) from error
    if np.any(decomposition.lambdas < 0.0):
        raise InvalidDecompositionException("decomposition has negative lambdas")
    return decomposition, coefficients


def save_decomposition(
    d: Decomposition, path: Path, tc: Optional[TensorCoefficients] = None
) -> Path:
    """Write a decomposition to a JSON file.

    Args:
        d: The decomposition
        path: The output file, overwritten if it exists
        tc: Tensor coefficients to store along with it

    Returns:
        The resolved path

    Raises:
        ConfigurationException: If the base measure has no stored form
    """
    document = decomposition_to_dict(d, tc)
    path = Path(path).resolve()
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open(mode="w") as json_file:
        json.dump(document, json_file, indent=1)
        json_file.write("\n")
    _LOGGER.info("Saved %d-term decomposition to %s", d.size, path)
    return path


def load_decomposition(
    path: Path,
) -> Tuple[Decomposition, Optional[TensorCoefficients]]:
    """Read a decomposition from a JSON file.

    Args:
        path: The file

    Returns:
        The decomposition and the stored tensor coefficients, if any

    Raises:
        InvalidDecompositionException: If the file is unreadable or malformed
    """
    try:
        with Path(path).open() as json_file:
            document = json.load(json_file)
    except (OSError, json.JSONDecodeError) as error:
        raise InvalidDecompositionException(
            f"cannot read decomposition {path}: {error}"
        ) from error
    return decomposition_from_dict(document)
