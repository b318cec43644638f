#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""Provides the run configuration of the command-line front end."""
import dataclasses
import enum
import logging
import math
import typing
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from simple_parsing.helpers import choice, field

from gaussfield.analysis.regularity import IncrementStatistic
from gaussfield.decomp.norms import NormMode
from gaussfield.utils.exceptions import ConfigurationException

_LOGGER = logging.getLogger(__name__)


class Command(str, enum.Enum):
    """The subcommands of the command-line front end."""

    DECOMPOSE = "decompose"
    """Build and store the biorthogonal decomposition of a kernel."""

    SAMPLE = "sample"
    """Draw samples from a stored decomposition and write their grid values."""

    VALIDATE_COV = "validate-cov"
    """Compare empirical covariances and pairing moments with their targets."""

    HOLDER = "holder"
    """Estimate the Hölder exponent of samples and the kernel's seminorm trend."""

    BESOV = "besov"
    """Check the per-level decay of the renormalised kernel coefficients."""

    WHITENOISE = "whitenoise"
    """Decompose and validate white noise on a base measure."""

    MERCER_ORACLE = "mercer-oracle"
    """Compare the decomposition with a Nyström Mercer expansion."""

    SANDWICH = "sandwich"
    """Check the two-sided bound on the exp-alpha difference quotient."""


# pylint: disable=too-many-instance-attributes, pointless-string-statement
@dataclasses.dataclass
class RunConfig:
    """Configuration of one run of a GaussField subcommand."""

    kernel: str = "exp-alpha:0.5"
    """The covariance kernel, e.g. exp-alpha:0.5, gaussian-se:1.0,
    white-noise:lebesgue or white-noise:counting:0.25;0.75"""

    dim: int = 1
    """Dimension n of the unit cube [0,1]^n"""

    k_max: int = 5
    """Truncation level of the dyadic basis"""

    alpha: float = 0.5
    """Hölder exponent used to renormalise basis functions, in (0, 1]"""

    gamma: List[float] = dataclasses.field(default_factory=lambda: [0.4, 0.6])
    """Exponents swept by the holder and besov commands"""

    seed: int = 42
    """The 64-bit seed of all random streams"""

    n_samples: int = field(default=1000, alias="--n")
    """Number of samples to draw"""

    grid_resolution: int = field(default=8, alias="--grid")
    """Resolution of the output grid, which has 2^grid + 1 nodes per axis"""

    pivot_tol: Optional[float] = None
    """Pivot tolerance of the biorthogonalisation; defaults to 1e-12 times the
    largest diagonal entry"""

    norm_mode: str = choice(
        *[mode.value for mode in NormMode], default=NormMode.GRID_HOELDER.value
    )
    """Norm used for the eigenvalue-like coefficients of the decomposition"""

    energy_cutoff: float = 0.0
    """Fraction of the coefficient mass that sampling may drop, in [0, 1)"""

    decomp: Optional[str] = None
    """Path of a decomposition file to read"""

    out: Optional[str] = None
    """Path of the primary output file: decomposition JSON for decompose and
    whitenoise, sample CSV for sample, covariance table CSV for validate-cov"""

    report: Optional[str] = None
    """Path of the validation report; CSV unless the name ends with .json"""

    n_triples: int = 10000
    """Number of random triples checked by the sandwich command"""

    grid_size: int = 512
    """Number of quadrature nodes of the Nyström oracle"""

    max_basis: int = 4096
    """Upper bound on the number of basis functions"""

    max_grid_points: int = 1 << 22
    """Upper bound on the number of grid points of an evaluation grid"""

    increment_statistic: str = choice(
        *[statistic.value for statistic in IncrementStatistic],
        default=IncrementStatistic.ROOT_MEAN_SQUARE.value,
    )
    """Summary of grid increments used to estimate Hölder exponents"""

    prefactor: Optional[float] = None
    """Constant of the Gaussian-covariance measure kernel, default (2 pi)^(n/2)"""

    workers: Optional[int] = None
    """Number of sampling threads; defaults to GAUSSFIELD_THREADS or 1"""

    def __post_init__(self) -> None:
        _require(self.dim >= 1, f"dim must be at least 1, got {self.dim}")
        _require(self.k_max >= 0, f"k_max must be non-negative, got {self.k_max}")
        _require(0 < self.alpha <= 1, f"alpha must lie in (0, 1], got {self.alpha}")
        _require(len(self.gamma) > 0, "gamma needs at least one value")
        for gamma in self.gamma:
            _require(0 < gamma <= 1, f"gamma values must lie in (0, 1], got {gamma}")
        _require(
            0 <= self.seed < 2 ** 64, f"seed must fit into 64 bits, got {self.seed}"
        )
        _require(self.n_samples >= 1, f"n must be positive, got {self.n_samples}")
        _require(
            self.grid_resolution >= 0,
            f"grid must be non-negative, got {self.grid_resolution}",
        )
        _require(
            self.pivot_tol is None or self.pivot_tol >= 0,
            f"pivot_tol must be non-negative, got {self.pivot_tol}",
        )
        _require(
            0 <= self.energy_cutoff < 1,
            f"energy_cutoff must lie in [0, 1), got {self.energy_cutoff}",
        )
        _require(
            self.n_triples >= 1, f"n_triples must be positive, got {self.n_triples}"
        )
        _require(
            self.grid_size >= 2, f"grid_size must be at least 2, got {self.grid_size}"
        )
        _require(self.max_basis >= 1, "max_basis must be positive")
        _require(self.max_grid_points >= 1, "max_grid_points must be positive")
        _require(
            self.prefactor is None
            or (self.prefactor > 0 and math.isfinite(self.prefactor)),
            f"prefactor must be positive, got {self.prefactor}",
        )
        _require(
            self.workers is None or self.workers >= 1,
            f"workers must be positive, got {self.workers}",
        )
        try:
            NormMode(self.norm_mode)
            IncrementStatistic(self.increment_statistic)
        except ValueError as error:
            raise ConfigurationException(str(error)) from error

    @property
    def norm(self) -> NormMode:
        """The norm mode as an enum member.

        Returns:
            The configured norm mode
        """
        return NormMode(self.norm_mode)

    @property
    def statistic(self) -> IncrementStatistic:
        """The increment statistic as an enum member.

        Returns:
            The configured increment statistic
        """
        return IncrementStatistic(self.increment_statistic)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ConfigurationException(message)


def _convert(annotation: Any, raw: str) -> Any:
    origin = typing.get_origin(annotation)
    if origin is Union:
        if raw.lower() in ("", "none"):
            return None
        inner = [arg for arg in typing.get_args(annotation) if arg is not type(None)]
        return _convert(inner[0], raw)
    if origin in (list, List):
        (item,) = typing.get_args(annotation)
        return [_convert(item, part.strip()) for part in raw.split(",") if part.strip()]
    if annotation is int:
        return int(raw, 0)
    if annotation is float:
        return float(raw)
    return raw


def parse_config_text(text: str) -> Dict[str, Any]:
    """Parse the flat ``key = value`` configuration format.

    Blank lines are skipped, ``#`` starts a comment, keys may use dashes or
    underscores and list values are comma separated.

    Args:
        text: The content of a configuration file

    Returns:
        The typed values by field name

    Raises:
        ConfigurationException: On malformed lines, unknown keys or bad values
    """
    hints = typing.get_type_hints(RunConfig)
    values: Dict[str, Any] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        if "=" not in content:
            raise ConfigurationException(f"line {number}: expected key = value")
        key, raw = (part.strip() for part in content.split("=", 1))
        key = key.replace("-", "_")
        if key not in hints:
            raise ConfigurationException(f"line {number}: unknown key {key!r}")
        try:
            values[key] = _convert(hints[key], raw)
        except ValueError as error:
            raise ConfigurationException(
                f"line {number}: bad value for {key}: {raw!r}"
            ) from error
    return values


def load_config_file(path: Union[str, Path]) -> RunConfig:
    """Read a configuration file.

    Args:
        path: The file to read

    Returns:
        A validated configuration with the file's values over the defaults

    Raises:
        ConfigurationException: If the file is unreadable or invalid
    """
    try:
        text = Path(path).read_text()
    except OSError as error:
        raise ConfigurationException(f"cannot read config file {path}") from error
    values = parse_config_text(text)
    _LOGGER.info("Read %d settings from %s", len(values), path)
    return RunConfig(**values)


# Singleton instance of the configuration.
configuration = RunConfig()
